#pragma once

#include <vector>

#include "hflab/folang.hpp"
#include "hflab/limits.hpp"

namespace hflab {

struct DefinedSubset {
  HfSet set;
  Formula witness;  // defines `set` over the source model with "y" free
};

/// Every subset of m.domain, each with an equality-disjunction witness
/// ("y = a | y = b | ..."; the empty subset gets "!(y = y)").  With
/// parameters allowed, definability over a finite domain collapses to the
/// full power set; the witnesses make that concrete.  Results are in
/// canonical set order.  ResourceLimitError when 2^|m| exceeds the budget.
std::vector<DefinedSubset> def_operator_full(const FiniteModel& m,
                                             const Limits& limits = Limits::defaults());

/// The subsets of m.domain definable by a formula of depth <= max_depth
/// with free variable "y", optionally with domain elements as parameters.
/// Always a subset of the full operator's output; strictly smaller when the
/// depth or parameter restriction bites.
std::vector<HfSet> def_operator_restricted(const FiniteModel& m,
                                           unsigned max_depth, bool allow_params,
                                           const Limits& limits = Limits::defaults());

struct Level {
  unsigned index = 0;
  FiniteModel contents;
};

/// Definable hierarchy: level 0 is empty, level k+1 holds exactly the
/// subsets of level k produced by def_operator_full.  At finite levels this
/// coincides with the cumulative hierarchy — see v_level.
/// ResourceLimitError when n exceeds limits.max_level.
Level l_level(unsigned n, const Limits& limits = Limits::defaults());

/// Cumulative hierarchy: level 0 is empty, level k+1 holds all subsets of
/// level k.  Same level bound as l_level.
Level v_level(unsigned n, const Limits& limits = Limits::defaults());

}  // namespace hflab
