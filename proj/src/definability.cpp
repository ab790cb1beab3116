#include "hflab/definability.hpp"

#include "hflab/constructible.hpp"
#include "hflab/errors.hpp"

namespace hflab {

bool defines(const FiniteModel& m, const Formula& f, const Var& free_var,
             const HfSet& target) {
  if (f.free_vars() != std::set<Var>{free_var}) {
    throw SemanticError("defining formula must have exactly one free variable '" +
                        free_var + "'");
  }
  for (const HfSet& b : m.domain()) {
    if (eval(m, f, {{free_var, b}}) != is_member(b, target)) return false;
  }
  return true;
}

Formula trivial_param_definition(const HfSet& target) {
  return Formula::membership(Term::var("y"),
                             Term::param(Parameter::ground(target)));
}

ParamFreeSearch search_param_free(const FiniteModel& m, const HfSet& target,
                                  unsigned max_depth, const Limits& limits) {
  ParamFreeSearch out;
  out.depth = max_depth;
  try {
    FormulaEnumerator en({"y"}, {}, max_depth, limits);
    while (auto f = en.next()) {
      if (f->free_vars() != std::set<Var>{"y"}) continue;  // closed formulas
      if (defines(m, *f, "y", target)) {
        out.status = SearchStatus::Found;
        out.formula = std::move(*f);
        return out;
      }
    }
    out.status = SearchStatus::NoneAtDepth;
  } catch (const ResourceLimitError&) {
    out.status = SearchStatus::ResourceExhausted;
  }
  return out;
}

std::optional<Formula> definable_without_params(const FiniteModel& m,
                                                const HfSet& target,
                                                unsigned max_depth,
                                                const Limits& limits) {
  ParamFreeSearch s = search_param_free(m, target, max_depth, limits);
  return s.formula;
}

namespace {

const char* status_text(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NoneAtDepth:
      return "none-at-depth";
    case SearchStatus::ResourceExhausted:
      return "resource-exhausted";
  }
  return "unknown";
}

}  // namespace

Json DiscernibilityReport::to_json() const {
  Json j;
  j["target"] = set_to_json(target);
  j["constructibleAtLevel"] =
      constructible_at_level ? Json(*constructible_at_level) : Json(nullptr);
  Json pf;
  pf["status"] = status_text(param_free.status);
  pf["searchDepth"] = param_free.depth;
  pf["formula"] = param_free.formula ? Json(param_free.formula->to_text()) : Json(nullptr);
  j["paramFree"] = std::move(pf);
  j["withParams"] = Json{{"formula", with_params.to_text()}};
  return j;
}

DiscernibilityReport discernibility_report(const FiniteModel& m,
                                           const HfSet& target,
                                           unsigned max_depth,
                                           unsigned max_level,
                                           const Limits& limits) {
  if (!m.contains(target)) {
    throw SemanticError("target is not an element of the model's domain");
  }
  DiscernibilityReport rep{target, std::nullopt,
                           search_param_free(m, target, max_depth, limits),
                           trivial_param_definition(target)};
  for (unsigned k = 0; k <= max_level; ++k) {
    if (l_level(k, limits).contents.contains(target)) {
      rep.constructible_at_level = k;
      break;
    }
  }
  return rep;
}

}  // namespace hflab
