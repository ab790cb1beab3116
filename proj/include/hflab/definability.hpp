#pragma once

#include <optional>

#include "hflab/folang.hpp"
#include "hflab/json_io.hpp"
#include "hflab/limits.hpp"

namespace hflab {

/// Does f, with free_var as its single free variable, carve target out of
/// the model?  True iff for every b in m.domain:
///   eval(m, f, free_var := b)  <=>  b in target.
/// Elements of target outside the domain are invisible to the check.
/// SemanticError unless free_vars(f) == {free_var}.
bool defines(const FiniteModel& m, const Formula& f, const Var& free_var,
             const HfSet& target);

/// "y in <target>": membership with the target itself as parameter.  This
/// defines target in every model, which is exactly why discernibility with
/// arbitrary parameters is trivial.
Formula trivial_param_definition(const HfSet& target);

enum class SearchStatus { Found, NoneAtDepth, ResourceExhausted };

struct ParamFreeSearch {
  SearchStatus status = SearchStatus::NoneAtDepth;
  std::optional<Formula> formula;  // first hit in enumeration order
  unsigned depth = 0;              // the depth bound that was searched
};

/// Searches the parameter-free formulas with free variable "y", depth <=
/// max_depth, in enumeration order, for one that defines target.
ParamFreeSearch search_param_free(const FiniteModel& m, const HfSet& target,
                                  unsigned max_depth,
                                  const Limits& limits = Limits::defaults());

/// Convenience: the formula of the first hit, nullopt when none exists at
/// this depth or the budget ran out.
std::optional<Formula> definable_without_params(
    const FiniteModel& m, const HfSet& target, unsigned max_depth,
    const Limits& limits = Limits::defaults());

/// The three discernibility notions for one target, side by side.
struct DiscernibilityReport {
  HfSet target;
  /// Least k with target in the k-th definable-hierarchy level, when found
  /// within the level bound.
  std::optional<unsigned> constructible_at_level;
  ParamFreeSearch param_free;
  Formula with_params;

  Json to_json() const;
};

/// SemanticError when target is not in m.domain.
DiscernibilityReport discernibility_report(const FiniteModel& m,
                                           const HfSet& target,
                                           unsigned max_depth,
                                           unsigned max_level,
                                           const Limits& limits = Limits::defaults());

}  // namespace hflab
