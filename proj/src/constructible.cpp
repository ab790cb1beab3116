#include "hflab/constructible.hpp"

#include <algorithm>

#include "hflab/errors.hpp"

namespace hflab {

std::vector<DefinedSubset> def_operator_full(const FiniteModel& m,
                                             const Limits& limits) {
  const std::size_t n = m.size();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.max_nodes) {
    throw ResourceLimitError("def_operator_full: 2^" + std::to_string(n) +
                             " subsets exceed the node budget");
  }
  const Term y = Term::var("y");
  std::span<const HfSet> dom = m.domain();
  std::vector<DefinedSubset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<HfSet> members;
    std::optional<Formula> witness;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (std::uint64_t{1} << i))) continue;
      members.push_back(dom[i]);
      Formula eq = Formula::equality(y, Term::param(Parameter::ground(dom[i])));
      witness = witness ? Formula::disjunction(std::move(*witness), std::move(eq))
                        : std::move(eq);
    }
    if (!witness) {
      // nothing satisfies "y is unequal to itself"
      witness = Formula::negation(Formula::equality(y, y));
    }
    out.push_back(DefinedSubset{HfSet::from_elements(std::move(members)),
                                std::move(*witness)});
  }
  // ascending masks over a canonical domain already yield canonical order
  return out;
}

std::vector<HfSet> def_operator_restricted(const FiniteModel& m,
                                           unsigned max_depth, bool allow_params,
                                           const Limits& limits) {
  std::vector<Parameter> params;
  if (allow_params) {
    for (const HfSet& d : m.domain()) params.push_back(Parameter::ground(d));
  }
  std::vector<HfSet> found;
  FormulaEnumerator en({"y"}, std::move(params), max_depth, limits);
  while (auto f = en.next()) {
    if (f->free_vars() != std::set<Var>{"y"}) continue;
    std::vector<HfSet> ext;
    for (const HfSet& b : m.domain()) {
      if (eval(m, *f, {{"y", b}})) ext.push_back(b);
    }
    found.push_back(HfSet::from_elements(std::move(ext)));
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

namespace {

Level build_level(unsigned n, const Limits& limits, bool definable) {
  if (n > limits.max_level) {
    throw ResourceLimitError("level " + std::to_string(n) +
                             " exceeds the level bound " +
                             std::to_string(limits.max_level));
  }
  Level level;  // level 0: empty contents
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<HfSet> next;
    if (definable) {
      for (DefinedSubset& d : def_operator_full(level.contents, limits)) {
        next.push_back(std::move(d.set));
      }
    } else {
      HfSet p = power_set(level.contents.as_set(), limits);
      next.assign(p.elements().begin(), p.elements().end());
    }
    level.contents = FiniteModel(std::move(next));
    level.index = k;
  }
  return level;
}

}  // namespace

Level l_level(unsigned n, const Limits& limits) {
  return build_level(n, limits, /*definable=*/true);
}

Level v_level(unsigned n, const Limits& limits) {
  return build_level(n, limits, /*definable=*/false);
}

}  // namespace hflab
