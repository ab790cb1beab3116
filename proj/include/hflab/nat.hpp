#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace hflab {

/// Unbounded non-negative integer.  Cardinalities, ranks and set codes are
/// reported in this type so no count is ever silently truncated.
using Nat = boost::multiprecision::cpp_int;

inline Nat pow2(std::uint64_t n) { return Nat(1) << n; }

}  // namespace hflab
