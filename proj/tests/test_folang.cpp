#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "hflab/errors.hpp"
#include "hflab/folang.hpp"
#include "oracles.hpp"

using namespace hflab;
using namespace hflab::testing;

namespace {

const HfSet kEmpty = HfSet::empty();

FiniteModel v_model(unsigned n) {
  // domain = all sets of rank < n
  HfSet level = kEmpty;
  for (unsigned i = 0; i < n; ++i) level = power_set(level);
  return FiniteModel(std::vector<HfSet>(level.elements().begin(), level.elements().end()));
}

Term yvar() { return Term::var("y"); }

}  // namespace

TEST_SUITE_BEGIN("folang");

TEST_CASE("parse simple quantified membership") {
  Formula f = parse_formula("E z . z in y");
  CHECK(f.kind() == Formula::Kind::Exists);
  CHECK(f.bound_var() == "z");
  CHECK(f.body().kind() == Formula::Kind::Membership);
  CHECK(f.body().lhs().is_var());
  CHECK(f.body().lhs().var_name() == "z");
  CHECK(f.free_vars() == std::set<Var>{"y"});
  CHECK(f.depth() == 2);
  CHECK(f.size() == 2);
}

TEST_CASE("quantifier scope runs to the right of the dot") {
  Formula f = parse_formula("A x . x in a -> x in b");
  REQUIRE(f.kind() == Formula::Kind::ForAll);
  CHECK(f.body().kind() == Formula::Kind::Implies);
  CHECK(f.free_vars() == std::set<Var>{"a", "b"});

  Formula g = parse_formula("E z . z in y & y = y");
  REQUIRE(g.kind() == Formula::Kind::Exists);
  CHECK(g.body().kind() == Formula::Kind::And);

  // parenthesized, the quantifier closes early
  Formula h = parse_formula("(E z . z in y) & y = y");
  CHECK(h.kind() == Formula::Kind::And);
  CHECK(h.left().kind() == Formula::Kind::Exists);
}

TEST_CASE("precedence and associativity") {
  Formula f = parse_formula("a in b & b in c | c = c");
  REQUIRE(f.kind() == Formula::Kind::Or);
  CHECK(f.left().kind() == Formula::Kind::And);

  Formula g = parse_formula("a = a -> b = b -> c = c");
  REQUIRE(g.kind() == Formula::Kind::Implies);
  CHECK(g.right().kind() == Formula::Kind::Implies);  // right-associative

  Formula h = parse_formula("!a in b & b in c");
  REQUIRE(h.kind() == Formula::Kind::And);
  CHECK(h.left().kind() == Formula::Kind::Not);  // '!' binds tighter than '&'
}

TEST_CASE("unicode aliases") {
  CHECK(parse_formula("∃ z . z ∈ y") == parse_formula("E z . z in y"));
  CHECK(parse_formula("∀ x . ¬(x ∈ y)") ==
        parse_formula("A x . !(x in y)"));
  CHECK(parse_formula("a = a ∧ b = b") == parse_formula("a = a & b = b"));
  CHECK(parse_formula("a = a ∨ b = b") == parse_formula("a = a | b = b"));
  CHECK(parse_formula("a = a → b = b") == parse_formula("a = a -> b = b"));
}

TEST_CASE("ground literals and name references in terms") {
  Formula f = parse_formula("y in {{},{{}}}");
  REQUIRE(f.kind() == Formula::Kind::Membership);
  CHECK(f.rhs().parameter().is_ground());
  CHECK(f.rhs().parameter().set() == von_neumann(2));

  Formula g = parse_formula("<0,1> in #G");
  CHECK(g.lhs().parameter().set() == kuratowski_pair(kEmpty, von_neumann(1)));
  CHECK(!g.rhs().parameter().is_ground());
  CHECK(g.rhs().parameter().name_id() == "G");
  CHECK(g.name_refs() == std::set<std::string>{"G"});
  CHECK(g.mentions_name("G"));
  CHECK(!g.mentions_name("H"));
  CHECK(g.is_closed());

  Formula h = parse_formula("2 in y");
  CHECK(h.lhs().parameter().set() == von_neumann(2));
}

TEST_CASE("parse errors carry byte offsets") {
  try {
    parse_formula("x in");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("x @ y"), ParseError);
  CHECK_THROWS_AS(parse_formula("(x in y"), ParseError);
  CHECK_THROWS_AS(parse_formula("E . x in y"), ParseError);
  CHECK_THROWS_AS(parse_formula("E in . x in y"), ParseError);
  CHECK_THROWS_AS(parse_formula("x in y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("x in y y in x"), ParseError);
  // variables may not appear inside set literals
  CHECK_THROWS_AS(parse_formula("{x} in y"), ParseError);
  try {
    parse_formula("{{},x} in y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("canonical printing round-trips") {
  for (const char* text : {
           "E z . z in y",
           "A x . x in a -> x in b",
           "!(E z . z in y)",
           "(E z . z in y) & y = y",
           "x in y & (y in z | z in x)",
           "!(y = y)",
           "A u . E v . u in v -> v in u",
           "<0,1> in #G & !(#G = {})",
       }) {
    Formula f = parse_formula(text);
    CHECK(parse_formula(f.to_text()) == f);
  }
  CHECK(parse_formula("E z . z in y").to_text() == "E z . z in y");
  CHECK(parse_formula("!(y = y)").to_text() == "!(y = y)");
  CHECK(parse_formula("A x . x in a -> x in b").to_text() ==
        "A x . (x in a -> x in b)");
}

TEST_CASE("exhaustive round-trip over the depth-3 stream") {
  std::vector<Formula> all = enumerate_formulas({"y"}, {}, 3);
  CHECK(all.size() == 3594);
  for (const Formula& f : all) {
    CHECK(parse_formula(f.to_text()) == f);
  }
}

TEST_CASE("eval: membership examples") {
  FiniteModel m = v_model(2);  // {{}, {{}}}
  Formula f = parse_formula("E z . z in y");
  CHECK(!eval(m, f, {{"y", kEmpty}}));
  CHECK(eval(m, f, {{"y", singleton(kEmpty)}}));

  Formula g = parse_formula("A x . x in y");
  CHECK(!eval(m, g, {{"y", singleton(kEmpty)}}));  // {{}} itself is not in {{}}

  Formula atom = parse_formula("{} in {{}}");
  CHECK(eval(m, atom, {}));
}

TEST_CASE("eval: quantifiers range over the domain only") {
  // {{{}}} is nonempty, but its element {{}} lies outside the domain {{}}.
  FiniteModel tiny(std::vector<HfSet>{kEmpty});
  Formula f = parse_formula("E z . z in y");
  CHECK(!eval(tiny, f, {{"y", singleton(singleton(kEmpty))}}));
  // atoms still use genuine membership
  Formula atom = parse_formula("{{}} in y");
  CHECK(eval(tiny, atom, {{"y", singleton(singleton(kEmpty))}}));
}

TEST_CASE("eval errors") {
  FiniteModel m = v_model(2);
  CHECK_THROWS_AS(eval(m, parse_formula("x in y"), {{"y", kEmpty}}), SemanticError);
  CHECK_THROWS_AS(eval(m, parse_formula("#G in y"), {{"y", kEmpty}}), SemanticError);
  // bound occurrences never need an assignment
  CHECK_NOTHROW(eval(m, parse_formula("E x . x in y"), {{"y", kEmpty}}));
}

TEST_CASE("eval trace reports witnesses and counterexamples") {
  FiniteModel m = v_model(2);
  EvalTrace trace;
  CHECK(eval(m, parse_formula("E z . z in y"), {{"y", singleton(kEmpty)}}, &trace));
  REQUIRE(trace.lines.size() == 1);
  CHECK(trace.lines[0] == "E z: witness z = {}");

  EvalTrace t2;
  CHECK(!eval(m, parse_formula("A z . z in y"), {{"y", kEmpty}}, &t2));
  REQUIRE(t2.lines.size() == 1);
  CHECK(t2.lines[0] == "A z: counterexample z = {}");
}

TEST_CASE("substitute replaces only free occurrences") {
  Formula f = parse_formula("y in y & (E y . y in y)");
  Formula g = substitute(f, "y", Parameter::ground(kEmpty));
  CHECK(g.to_text() == "({} in {} & E y . y in y)");
  CHECK_THROWS_AS(substitute(f, "z", Parameter::ground(kEmpty)), SemanticError);
  CHECK_THROWS_AS(substitute(parse_formula("E z . z in z"), "z",
                             Parameter::ground(kEmpty)),
                  SemanticError);

  Formula h = substitute(parse_formula("E z . z in y"), "y",
                         Parameter::name_ref("G"));
  CHECK(h.to_text() == "E z . z in #G");
}

TEST_CASE("eval agrees with the substitution-based oracle") {
  // all 16 submodels of the rank-2 universe x all depth-3 formulas over y
  std::vector<HfSet> univ;
  {
    HfSet v3 = power_set(power_set(power_set(kEmpty)));
    univ.assign(v3.elements().begin(), v3.elements().end());
  }
  std::vector<FiniteModel> models;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<HfSet> dom;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) dom.push_back(univ[i]);
    }
    models.push_back(FiniteModel(std::move(dom)));
  }
  std::vector<Formula> formulas = enumerate_formulas({"y"}, {}, 3);
  std::size_t checked = 0;
  for (std::size_t fi = 0; fi < formulas.size(); fi += 7) {  // every 7th: still >500 formulas
    const Formula& f = formulas[fi];
    bool closed = f.is_closed();
    for (const FiniteModel& m : models) {
      if (closed) {
        CHECK(eval(m, f, {}) == subst_eval(m, f, {}));
        ++checked;
      } else {
        for (const HfSet& b : m.domain()) {
          Assignment a{{"y", b}};
          CHECK(eval(m, f, a) == subst_eval(m, f, a));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("connective and quantifier dualities hold under eval") {
  Rng rng(101);
  std::vector<Term> terms{yvar()};
  for (int t = 0; t < 400; ++t) {
    FiniteModel m = random_model(rng, 5, 3);
    HfSet y = random_hfset(rng, 3, 3);
    Assignment a{{"y", y}};
    Formula f = random_formula(rng, 3, terms);
    Formula g = random_formula(rng, 3, terms);
    // De Morgan
    CHECK(eval(m, Formula::negation(Formula::conjunction(f, g)), a) ==
          eval(m, Formula::disjunction(Formula::negation(f), Formula::negation(g)), a));
    // material implication
    CHECK(eval(m, Formula::implication(f, g), a) ==
          eval(m, Formula::disjunction(Formula::negation(f), g), a));
    // quantifier duality
    Formula body = random_formula(rng, 2, terms);
    CHECK(eval(m, Formula::negation(Formula::exists("y", body)), {}) ==
          eval(m, Formula::forall("y", Formula::negation(body)), {}));
  }
}

TEST_CASE("enumeration: the depth-1 stream is exactly the atoms") {
  std::vector<Formula> fs = enumerate_formulas({"y"}, {}, 1);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].to_text() == "y in y");
  CHECK(fs[1].to_text() == "y = y");
}

TEST_CASE("enumeration: frozen counts for small vocabularies") {
  CHECK(enumerate_formulas({"y"}, {}, 2).size() == 32);
  CHECK(enumerate_formulas({"y"}, {}, 3).size() == 3594);
  CHECK(enumerate_formulas({}, {Parameter::name_ref("G")}, 2).size() == 32);
  CHECK(enumerate_formulas({}, {}, 3).size() == 116);
  CHECK(enumerate_formulas({"y"},
                           {Parameter::ground(kEmpty), Parameter::ground(von_neumann(1))},
                           2)
            .size() == 1072);
}

TEST_CASE("enumeration is duplicate-free, ordered by size, within depth") {
  std::vector<Formula> fs = enumerate_formulas({"y"}, {}, 3);
  std::set<std::string> seen;
  std::size_t last_size = 0;
  for (const Formula& f : fs) {
    CHECK(f.depth() <= 3);
    CHECK(f.size() >= last_size);
    last_size = f.size();
    CHECK(seen.insert(f.to_text()).second);
    std::set<Var> fv = f.free_vars();
    for (const Var& v : fv) CHECK(v == "y");
  }
}

TEST_CASE("enumeration: larger vocabularies extend smaller ones") {
  std::vector<Formula> small = enumerate_formulas({"y"}, {}, 2);
  std::vector<Formula> big = enumerate_formulas({"x", "y"}, {}, 2);
  std::set<std::string> big_texts;
  for (const Formula& f : big) big_texts.insert(f.to_text());
  for (const Formula& f : small) {
    CHECK(big_texts.count(f.to_text()) == 1);
  }
  CHECK(big.size() > small.size());
}

TEST_CASE("enumeration avoids capturing user variable names") {
  std::vector<Formula> fs = enumerate_formulas({"z0"}, {}, 2);
  for (const Formula& f : fs) {
    if (f.kind() == Formula::Kind::Exists || f.kind() == Formula::Kind::ForAll) {
      CHECK(f.bound_var() == "z1");  // z0 is taken by the free variable
    }
  }
}

TEST_CASE("enumeration respects depth preconditions and budget") {
  CHECK_THROWS_AS(enumerate_formulas({"y"}, {}, 0), SemanticError);
  Limits tight;
  tight.max_nodes = 100;
  CHECK_THROWS_AS(enumerate_formulas({"y"}, {}, 3, tight), ResourceLimitError);
}

TEST_CASE("FiniteModel canonicalizes its domain") {
  FiniteModel m(std::vector<HfSet>{von_neumann(2), kEmpty, von_neumann(2), singleton(kEmpty)});
  CHECK(m.size() == 3);
  CHECK(m.domain()[0] == kEmpty);
  CHECK(m.contains(von_neumann(2)));
  CHECK(!m.contains(singleton(singleton(kEmpty))));
  CHECK(m.as_set() == HfSet::parse("{{},{{}},{{},{{}}}}"));
}

TEST_SUITE_END();
