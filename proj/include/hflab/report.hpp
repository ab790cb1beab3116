#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hflab/json_io.hpp"
#include "hflab/limits.hpp"

namespace hflab {

enum class Scale { Small, Medium, Large };

/// "small" | "medium" | "large"; SemanticError otherwise.
Scale parse_scale(const std::string& text);
const char* scale_name(Scale s);
unsigned scale_factor(Scale s);  // 1, 5, 25: multiplies randomized trial counts

struct ClaimResult {
  std::string claim_id;
  std::string anchor;    // one-line statement of the claim being checked
  std::string verdict;   // "pass" | "fail" | "out-of-scope"
  Json witnesses;        // evidence, or the reason when out of scope
  std::optional<double> runtime_ms;

  Json to_json() const;
};

struct ClaimReport {
  std::uint64_t seed = 0;
  Scale scale = Scale::Small;
  std::vector<ClaimResult> claims;

  /// True when no in-scope claim failed.
  bool all_verified_pass() const;
  Json to_json() const;
};

/// Runs the fixed claim registry.  Every run covers the same claim ids in
/// the same order; randomized trial counts grow with the scale.  Output is
/// a pure function of (seed, scale) unless timings is set, which adds
/// wall-clock fields.
ClaimReport run_claim_report(std::uint64_t seed, Scale scale, bool timings = false,
                             const Limits& limits = Limits::defaults());

}  // namespace hflab
