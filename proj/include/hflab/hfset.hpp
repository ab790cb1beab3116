#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hflab/limits.hpp"
#include "hflab/nat.hpp"

namespace hflab {

/// An immutable hereditarily finite set in canonical form: the element
/// vector is strictly increasing in the total order induced by Ackermann
/// codes (code(x) = sum over y in x of 2^code(y)).  Two sets are equal iff
/// they are extensionally equal iff their canonical forms are identical.
///
/// Codes grow as iterated exponentials, so they are never materialized for
/// comparisons.  compare() works structurally: the largest element of the
/// symmetric difference decides, which amounts to comparing the element
/// vectors from the top down.
class HfSet {
 public:
  /// The empty set.
  HfSet();

  static HfSet empty() { return HfSet(); }

  /// Canonical set whose elements are the distinct members of xs.
  static HfSet from_elements(std::vector<HfSet> xs);

  std::span<const HfSet> elements() const;

  bool is_empty() const { return card() == 0; }

  /// Cardinality as a machine integer.
  std::size_t card() const;

  /// Von Neumann rank: 0 for the empty set, else 1 + max rank of elements.
  unsigned rank() const;

  /// x ∈ this, by binary search over the canonical element vector.
  bool contains(const HfSet& x) const;

  bool subset_of(const HfSet& b) const;

  /// Every element is also a subset.
  bool is_transitive() const;

  /// Three-way comparison in Ackermann-code order, evaluated without
  /// materializing any code.  Returns <0, 0, >0.
  static int compare(const HfSet& a, const HfSet& b);

  bool operator==(const HfSet& o) const;
  bool operator!=(const HfSet& o) const { return !(*this == o); }
  bool operator<(const HfSet& o) const { return compare(*this, o) < 0; }
  bool operator<=(const HfSet& o) const { return compare(*this, o) <= 0; }
  bool operator>(const HfSet& o) const { return compare(*this, o) > 0; }
  bool operator>=(const HfSet& o) const { return compare(*this, o) >= 0; }

  /// Structural hash, cached at construction.
  std::size_t hash() const;

  /// Canonical text literal, e.g. "{}" and "{{},{{}}}".  Elements appear in
  /// canonical order with no whitespace.
  std::string to_text() const;

  /// Parses a set literal: braces ("{{},{{}}}"), decimal numerals standing
  /// for von Neumann naturals ("2"), and Kuratowski pairs ("<0,1>").
  /// Throws ParseError with a byte offset on malformed input.
  static HfSet parse(std::string_view text);

 private:
  struct Node;

  explicit HfSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  /// Trusted constructor: xs must already be strictly increasing.
  static HfSet from_sorted_unique(std::vector<HfSet> xs);

  std::shared_ptr<const Node> node_;

  friend HfSet power_set(const HfSet&, const Limits&);
};

struct HfSetHash {
  std::size_t operator()(const HfSet& s) const { return s.hash(); }
};

bool is_member(const HfSet& a, const HfSet& b);
bool is_subset(const HfSet& a, const HfSet& b);
bool is_transitive(const HfSet& a);
unsigned rank(const HfSet& a);
Nat cardinality(const HfSet& a);
bool equinumerous(const HfSet& a, const HfSet& b);

HfSet singleton(const HfSet& a);

/// {a, b}; collapses to a singleton when a == b.
HfSet pair_set(const HfSet& a, const HfSet& b);

/// Union of the elements of a.
HfSet union_of(const HfSet& a);

/// Kuratowski pair {{a},{a,b}}.
HfSet kuratowski_pair(const HfSet& a, const HfSet& b);

/// Inverse of kuratowski_pair; nullopt when p does not have pair shape.
std::optional<std::pair<HfSet, HfSet>> kuratowski_decode(const HfSet& p);

/// Set of all subsets of a.  Fails with ResourceLimitError when |a| exceeds
/// limits.max_power_set_card.
HfSet power_set(const HfSet& a, const Limits& limits = Limits::defaults());

/// Smallest transitive set that includes a as a subset (a itself is not an
/// element of the result unless it occurs hereditarily).
HfSet transitive_closure(const HfSet& a);

/// Von Neumann natural: 0 = {}, n+1 = n ∪ {n}.
HfSet von_neumann(std::uint64_t n, const Limits& limits = Limits::defaults());

/// Materialized Ackermann code.  Practical only for small sets: the code of
/// a set needs 2^code(y) bits for each element y, so this raises
/// ResourceLimitError once any intermediate code exceeds
/// limits.max_code_bits bits.  Kept as an oracle for the structural order.
Nat ackermann_code(const HfSet& a, const Limits& limits = Limits::defaults());

/// Incremental form of HfSet::parse used when a literal is embedded in a
/// larger syntax: parses one literal starting at pos (skipping leading
/// whitespace) and advances pos just past it.
HfSet parse_set_literal(std::string_view text, std::size_t& pos);

}  // namespace hflab
