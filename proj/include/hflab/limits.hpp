#pragma once

#include <cstdint>

#include "hflab/errors.hpp"

namespace hflab {

/// Caps for operations whose cost can blow up combinatorially.  All
/// potentially explosive entry points take a Limits argument and raise
/// ResourceLimitError instead of running away.
struct Limits {
  /// Generic node budget: formulas enumerated, subsets built, search steps.
  std::uint64_t max_nodes = 2'000'000;

  /// Largest cardinality power_set will expand (2^n subsets).
  std::uint64_t max_power_set_card = 20;

  /// Highest hierarchy level l_level / v_level will construct.
  unsigned max_level = 4;

  /// Largest Ackermann code, in bits, that ackermann_code will materialize.
  std::uint64_t max_code_bits = 1u << 20;

  static Limits defaults() { return Limits{}; }

  /// defaults(), with max_nodes overridden by the HFF_RESOURCE_LIMIT
  /// environment variable when it is set to a positive integer.
  static Limits from_env();
};

/// Countdown used inside searches and enumerations.
class Budget {
 public:
  explicit Budget(std::uint64_t total) : left_(total) {}

  void charge(std::uint64_t n = 1) {
    if (n > left_) throw ResourceLimitError("resource budget exhausted");
    left_ -= n;
  }

  std::uint64_t left() const { return left_; }

 private:
  std::uint64_t left_;
};

}  // namespace hflab
