#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "hflab/constructible.hpp"
#include "hflab/definability.hpp"
#include "hflab/errors.hpp"
#include "oracles.hpp"

using namespace hflab;
using namespace hflab::testing;

namespace {

const HfSet kEmpty = HfSet::empty();

/// Independent subset enumeration: choose/skip recursion over the domain.
void all_subsets_rec(std::span<const HfSet> dom, std::size_t i,
                     std::vector<HfSet>& picked, std::vector<HfSet>& out) {
  if (i == dom.size()) {
    out.push_back(HfSet::from_elements(picked));
    return;
  }
  all_subsets_rec(dom, i + 1, picked, out);
  picked.push_back(dom[i]);
  all_subsets_rec(dom, i + 1, picked, out);
  picked.pop_back();
}

std::vector<HfSet> all_subsets(const FiniteModel& m) {
  std::vector<HfSet> out;
  std::vector<HfSet> picked;
  all_subsets_rec(m.domain(), 0, picked, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HfSet> sets_of(const std::vector<DefinedSubset>& defs) {
  std::vector<HfSet> out;
  for (const DefinedSubset& d : defs) out.push_back(d.set);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("constructible");

TEST_CASE("full operator on the empty model") {
  std::vector<DefinedSubset> defs = def_operator_full(FiniteModel(std::vector<HfSet>{}));
  REQUIRE(defs.size() == 1);
  CHECK(defs[0].set == kEmpty);
  CHECK(defs[0].witness.to_text() == "!(y = y)");
}

TEST_CASE("full operator on a two-element model, frozen witnesses") {
  FiniteModel m({kEmpty, singleton(kEmpty)});
  std::vector<DefinedSubset> defs = def_operator_full(m);
  REQUIRE(defs.size() == 4);
  CHECK(defs[0].set == kEmpty);
  CHECK(defs[1].set == singleton(kEmpty));
  CHECK(defs[2].set == singleton(singleton(kEmpty)));
  CHECK(defs[3].set == HfSet::parse("{{},{{}}}"));
  CHECK(defs[0].witness.to_text() == "!(y = y)");
  CHECK(defs[1].witness.to_text() == "y = {}");
  CHECK(defs[2].witness.to_text() == "y = {{}}");
  CHECK(defs[3].witness.to_text() == "(y = {} | y = {{}})");
  for (const DefinedSubset& d : defs) CHECK(defines(m, d.witness, "y", d.set));
}

TEST_CASE("full operator: counts, order, and witness soundness at random") {
  Rng rng(977);
  for (int t = 0; t < 40; ++t) {
    FiniteModel m = random_model(rng, 5, 3);
    std::vector<DefinedSubset> defs = def_operator_full(m);
    REQUIRE(defs.size() == (std::size_t{1} << m.size()));
    for (std::size_t i = 1; i < defs.size(); ++i) {
      CHECK(HfSet::compare(defs[i - 1].set, defs[i].set) < 0);
    }
    CHECK(sets_of(defs) == all_subsets(m));
    for (const DefinedSubset& d : defs) {
      // independent check: substitution evaluator, direct element scan
      for (const HfSet& b : m.domain()) {
        bool member = false;
        for (const HfSet& x : d.set.elements()) member = member || x == b;
        CHECK(subst_eval(m, d.witness, {{"y", b}}) == member);
      }
    }
  }
}

TEST_CASE("full operator respects the node budget") {
  Limits tight;
  tight.max_nodes = 8;
  FiniteModel m(rank3_universe());  // 16 elements, far past a budget of 8
  CHECK_THROWS_AS(def_operator_full(m, tight), ResourceLimitError);
}

TEST_CASE("restricted operator: depth one sees only the definable extremes") {
  FiniteModel m({kEmpty, singleton(kEmpty)});
  std::vector<HfSet> got = def_operator_restricted(m, 1, false);
  // atoms over {y} only: "y in y" carves {}, "y = y" carves the domain
  REQUIRE(got.size() == 2);
  CHECK(got[0] == kEmpty);
  CHECK(got[1] == m.as_set());
}

TEST_CASE("restricted operator: depth two without parameters is already full here") {
  FiniteModel m({kEmpty, singleton(kEmpty)});
  std::vector<HfSet> got = def_operator_restricted(m, 2, false);
  CHECK(got == all_subsets(m));  // quantified atoms split the two singletons
}

TEST_CASE("restricted operator with parameters collapses to the power set") {
  // equality atoms, their negations, and "y = y" reach every subset of a
  // domain of size <= 3 by depth two
  Rng rng(1303);
  for (int t = 0; t < 6; ++t) {
    FiniteModel m = random_model(rng, 3, 3);
    CHECK(def_operator_restricted(m, 2, true) == all_subsets(m));
  }
}

TEST_CASE("restricted operator is monotone in depth and below the full one") {
  Rng rng(4421);
  for (int t = 0; t < 8; ++t) {
    FiniteModel m = random_model(rng, 3, 2);
    std::vector<HfSet> full = all_subsets(m);
    std::vector<HfSet> prev;
    for (unsigned d = 1; d <= 2; ++d) {
      for (bool params : {false, true}) {
        std::vector<HfSet> got = def_operator_restricted(m, d, params);
        CHECK(std::includes(full.begin(), full.end(), got.begin(), got.end()));
      }
      std::vector<HfSet> got = def_operator_restricted(m, d, false);
      CHECK(std::includes(got.begin(), got.end(), prev.begin(), prev.end()));
      prev = std::move(got);
    }
  }
}

TEST_CASE("hierarchy levels: frozen sizes and the finite collapse") {
  const std::size_t expected[] = {0, 1, 2, 4, 16};
  for (unsigned n = 0; n <= 4; ++n) {
    Level l = l_level(n);
    Level v = v_level(n);
    CHECK(l.index == n);
    CHECK(v.index == n);
    CHECK(l.contents.size() == expected[n]);
    CHECK(v.contents.size() == expected[n]);
    // with full parameter use, definable and cumulative levels coincide
    CHECK(l.contents.as_set() == v.contents.as_set());
    CHECK(l.contents.as_set().is_transitive());
  }
}

TEST_CASE("hierarchy levels: cumulative, and reproduced by the operator") {
  for (unsigned k = 0; k < 4; ++k) {
    Level cur = l_level(k);
    Level next = l_level(k + 1);
    CHECK(is_subset(cur.contents.as_set(), next.contents.as_set()));
    std::vector<DefinedSubset> defs = def_operator_full(cur.contents);
    std::vector<HfSet> want(next.contents.domain().begin(),
                            next.contents.domain().end());
    CHECK(sets_of(defs) == want);
    for (const DefinedSubset& d : defs) {
      CHECK(defines(cur.contents, d.witness, "y", d.set));
    }
  }
}

TEST_CASE("hierarchy levels: the level bound is enforced") {
  CHECK_THROWS_AS(l_level(5), ResourceLimitError);
  CHECK_THROWS_AS(v_level(5), ResourceLimitError);
  Limits two;
  two.max_level = 2;
  CHECK_THROWS_AS(l_level(3, two), ResourceLimitError);
  CHECK(l_level(2, two).contents.size() == 2);
}

TEST_SUITE_END();
