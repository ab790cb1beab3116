#pragma once

#include <cstdint>

namespace hflab {

/// splitmix64 generator.  The standard <random> engines are portable but the
/// distributions are not; this gives byte-identical streams on every
/// platform, which the deterministic-report contract depends on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); n == 0 yields 0.  Modulo bias is
  /// irrelevant at the scales used here.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  bool coin() { return (next() & 1) != 0; }

  /// Independent child stream; deterministic given the parent state.
  Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ull); }

 private:
  std::uint64_t state_;
};

}  // namespace hflab
