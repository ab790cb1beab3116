#include "hflab/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "hflab/errors.hpp"

namespace hflab {

struct HfSet::Node {
  std::vector<HfSet> elems;  // strictly increasing in code order
  unsigned rank = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b9u + (seed << 6) + (seed >> 2));
}

}  // namespace

HfSet::HfSet() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::make_shared<Node>();
    n->hash = 0x9e3779b97f4a7c15ull;
    return std::shared_ptr<const Node>(n);
  }();
  node_ = node;
}

HfSet HfSet::from_sorted_unique(std::vector<HfSet> xs) {
  if (xs.empty()) return HfSet();
  auto node = std::make_shared<Node>();
  node->rank = 0;
  node->hash = 0x517cc1b727220a95ull;
  for (const HfSet& x : xs) {
    node->rank = std::max(node->rank, x.rank() + 1);
    node->hash = combine_hash(node->hash, x.hash());
  }
  node->elems = std::move(xs);
  return HfSet(std::move(node));
}

HfSet HfSet::from_elements(std::vector<HfSet> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return from_sorted_unique(std::move(xs));
}

std::span<const HfSet> HfSet::elements() const { return node_->elems; }

std::size_t HfSet::card() const { return node_->elems.size(); }

unsigned HfSet::rank() const { return node_->rank; }

std::size_t HfSet::hash() const { return node_->hash; }

bool HfSet::operator==(const HfSet& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash) return false;
  if (node_->elems.size() != o.node_->elems.size()) return false;
  if (node_->rank != o.node_->rank) return false;
  for (std::size_t i = 0; i < node_->elems.size(); ++i) {
    if (!(node_->elems[i] == o.node_->elems[i])) return false;
  }
  return true;
}

int HfSet::compare(const HfSet& a, const HfSet& b) {
  if (a.node_ == b.node_) return 0;
  // The largest element of the symmetric difference decides which code is
  // bigger, so walk both canonical vectors from the top down.
  const auto& ae = a.node_->elems;
  const auto& be = b.node_->elems;
  std::size_t i = ae.size();
  std::size_t j = be.size();
  while (i > 0 && j > 0) {
    int c = compare(ae[i - 1], be[j - 1]);
    if (c != 0) return c;
    --i;
    --j;
  }
  if (i > 0) return 1;
  if (j > 0) return -1;
  return 0;
}

bool HfSet::contains(const HfSet& x) const {
  const auto& es = node_->elems;
  auto it = std::lower_bound(es.begin(), es.end(), x);
  return it != es.end() && *it == x;
}

bool HfSet::subset_of(const HfSet& b) const {
  const auto& xs = node_->elems;
  const auto& ys = b.node_->elems;
  std::size_t j = 0;
  for (const HfSet& x : xs) {
    while (j < ys.size() && ys[j] < x) ++j;
    if (j == ys.size() || !(ys[j] == x)) return false;
    ++j;
  }
  return true;
}

bool HfSet::is_transitive() const {
  for (const HfSet& e : node_->elems) {
    if (!e.subset_of(*this)) return false;
  }
  return true;
}

std::string HfSet::to_text() const {
  std::string out = "{";
  bool first = true;
  for (const HfSet& e : node_->elems) {
    if (!first) out += ',';
    first = false;
    out += e.to_text();
  }
  out += '}';
  return out;
}

bool is_member(const HfSet& a, const HfSet& b) { return b.contains(a); }

bool is_subset(const HfSet& a, const HfSet& b) { return a.subset_of(b); }

bool is_transitive(const HfSet& a) { return a.is_transitive(); }

unsigned rank(const HfSet& a) { return a.rank(); }

Nat cardinality(const HfSet& a) { return Nat(a.card()); }

bool equinumerous(const HfSet& a, const HfSet& b) { return a.card() == b.card(); }

HfSet singleton(const HfSet& a) { return HfSet::from_elements({a}); }

HfSet pair_set(const HfSet& a, const HfSet& b) {
  return HfSet::from_elements({a, b});
}

HfSet union_of(const HfSet& a) {
  std::vector<HfSet> out;
  for (const HfSet& e : a.elements()) {
    out.insert(out.end(), e.elements().begin(), e.elements().end());
  }
  return HfSet::from_elements(std::move(out));
}

HfSet kuratowski_pair(const HfSet& a, const HfSet& b) {
  return pair_set(singleton(a), pair_set(a, b));
}

std::optional<std::pair<HfSet, HfSet>> kuratowski_decode(const HfSet& p) {
  if (p.card() == 1) {
    const HfSet& inner = p.elements()[0];
    if (inner.card() != 1) return std::nullopt;
    return std::make_pair(inner.elements()[0], inner.elements()[0]);
  }
  if (p.card() == 2) {
    const HfSet* single = nullptr;
    const HfSet* dual = nullptr;
    for (const HfSet& e : p.elements()) {
      if (e.card() == 1 && single == nullptr) {
        single = &e;
      } else if (e.card() == 2 && dual == nullptr) {
        dual = &e;
      } else {
        return std::nullopt;
      }
    }
    if (single == nullptr || dual == nullptr) return std::nullopt;
    const HfSet& a = single->elements()[0];
    if (!dual->contains(a)) return std::nullopt;
    const HfSet& x = dual->elements()[0];
    const HfSet& y = dual->elements()[1];
    return std::make_pair(a, x == a ? y : x);
  }
  return std::nullopt;
}

HfSet power_set(const HfSet& a, const Limits& limits) {
  const std::size_t n = a.card();
  if (n > limits.max_power_set_card || n >= 63) {
    throw ResourceLimitError("power_set: cardinality " + std::to_string(n) +
                             " exceeds limit " +
                             std::to_string(limits.max_power_set_card));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::span<const HfSet> es = a.elements();
  std::vector<HfSet> subsets;
  subsets.reserve(count);
  // Ascending bit masks over the canonical element vector enumerate the
  // subsets already in code order: the highest differing bit selects the
  // largest element of the symmetric difference.
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<HfSet> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) members.push_back(es[i]);
    }
    subsets.push_back(HfSet::from_sorted_unique(std::move(members)));
  }
  return HfSet::from_sorted_unique(std::move(subsets));
}

HfSet transitive_closure(const HfSet& a) {
  std::vector<HfSet> acc;
  std::unordered_set<HfSet, HfSetHash> seen;
  std::vector<HfSet> stack(a.elements().begin(), a.elements().end());
  while (!stack.empty()) {
    HfSet x = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (const HfSet& e : x.elements()) stack.push_back(e);
    acc.push_back(std::move(x));
  }
  return HfSet::from_elements(std::move(acc));
}

HfSet von_neumann(std::uint64_t n, const Limits& limits) {
  // The n-th von Neumann natural stores O(n^2) element handles.  The first
  // clause keeps the multiplication below from overflowing.
  if (n > limits.max_nodes || (n > 0 && n * (n + 1) / 2 > limits.max_nodes)) {
    throw ResourceLimitError("von_neumann: index " + std::to_string(n) +
                             " exceeds the node budget");
  }
  HfSet v;
  std::vector<HfSet> elems;
  for (std::uint64_t i = 0; i < n; ++i) {
    elems.push_back(v);
    v = HfSet::from_elements(elems);
  }
  return v;
}

namespace {

Nat code_rec(const HfSet& a, const Limits& limits,
             std::unordered_map<HfSet, Nat, HfSetHash>& memo) {
  auto it = memo.find(a);
  if (it != memo.end()) return it->second;
  Nat code = 0;
  for (const HfSet& e : a.elements()) {
    Nat c = code_rec(e, limits, memo);
    if (c > limits.max_code_bits) {
      throw ResourceLimitError(
          "ackermann_code: code needs more than " +
          std::to_string(limits.max_code_bits) + " bits");
    }
    code += Nat(1) << static_cast<std::uint64_t>(c);
  }
  memo.emplace(a, code);
  return code;
}

}  // namespace

Nat ackermann_code(const HfSet& a, const Limits& limits) {
  std::unordered_map<HfSet, Nat, HfSetHash> memo;
  return code_rec(a, limits, memo);
}

// ---------------------------------------------------------------------------
// Literal parsing.

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
    ++pos;
  }
}

HfSet parse_literal(std::string_view s, std::size_t& pos);

HfSet parse_braces(std::string_view s, std::size_t& pos) {
  ++pos;  // consume '{'
  skip_ws(s, pos);
  std::vector<HfSet> elems;
  if (pos < s.size() && s[pos] == '}') {
    ++pos;
    return HfSet::from_elements(std::move(elems));
  }
  while (true) {
    elems.push_back(parse_literal(s, pos));
    skip_ws(s, pos);
    if (pos >= s.size()) throw ParseError("expected ',' or '}'", pos);
    if (s[pos] == ',') {
      ++pos;
      continue;
    }
    if (s[pos] == '}') {
      ++pos;
      return HfSet::from_elements(std::move(elems));
    }
    throw ParseError("expected ',' or '}'", pos);
  }
}

HfSet parse_numeral(std::string_view s, std::size_t& pos) {
  const std::size_t start = pos;
  std::uint64_t n = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    if (n > 100000) throw ParseError("numeral too large", start);
    n = n * 10 + static_cast<std::uint64_t>(s[pos] - '0');
    ++pos;
  }
  return von_neumann(n);
}

HfSet parse_literal(std::string_view s, std::size_t& pos) {
  skip_ws(s, pos);
  if (pos >= s.size()) throw ParseError("expected set literal", pos);
  const char c = s[pos];
  if (c == '{') return parse_braces(s, pos);
  if (std::isdigit(static_cast<unsigned char>(c))) return parse_numeral(s, pos);
  if (c == '<') {
    ++pos;
    HfSet a = parse_literal(s, pos);
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] != ',') throw ParseError("expected ','", pos);
    ++pos;
    HfSet b = parse_literal(s, pos);
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] != '>') throw ParseError("expected '>'", pos);
    ++pos;
    return kuratowski_pair(a, b);
  }
  throw ParseError("expected set literal", pos);
}

}  // namespace

HfSet parse_set_literal(std::string_view text, std::size_t& pos) {
  return parse_literal(text, pos);
}

HfSet HfSet::parse(std::string_view text) {
  std::size_t pos = 0;
  HfSet v = parse_literal(text, pos);
  skip_ws(text, pos);
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  return v;
}

}  // namespace hflab
