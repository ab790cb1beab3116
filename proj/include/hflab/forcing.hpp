#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hflab/folang.hpp"
#include "hflab/hfset.hpp"
#include "hflab/json_io.hpp"
#include "hflab/limits.hpp"

namespace hflab {

/// A finite forcing notion: conditions named by unique ids, a partial order
/// with a maximum ("top"), and optionally a set encoding per condition.
/// Conditions are addressed by index into ids().
///
/// Construction closes the supplied relation reflexively and transitively;
/// antisymmetry violations (cycles) are reported as SemanticError with the
/// offending conditions.  Smaller conditions carry more information.
class ForcingNotion {
 public:
  /// Arbitrary finite poset from explicit "p <= q" pairs.  Requires a
  /// unique maximum above every condition.
  static ForcingNotion make(std::vector<std::string> ids,
                            const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                            const Limits& limits = Limits::defaults());

  /// All partial functions {0..bits-1} -> {0,1}, ordered by reverse
  /// extension; 3^bits conditions, top = the empty function.  Ids spell the
  /// function, one character per position: 'x' undefined, '0' or '1' the
  /// value ("x1" maps position 1 to 1).  bits must be >= 1.
  static ForcingNotion cohen(unsigned bits, const Limits& limits = Limits::defaults());

  /// The one-condition notion (id "1"), encodable (its condition encodes to
  /// the empty set), so the canonical generic name exists.
  static ForcingNotion trivial();

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t p) const { return ids_[p]; }
  std::size_t index_of(const std::string& id) const;  // SemanticError if unknown
  std::size_t top() const { return top_; }

  bool leq(std::size_t p, std::size_t q) const { return leq_[p][q]; }
  /// p, q compatible iff some r is below both.
  bool compatible(std::size_t p, std::size_t q) const;
  std::vector<std::size_t> below(std::size_t p) const;  // all q <= p
  std::vector<std::size_t> minimal_conditions() const;
  /// Every condition has a member of d below it.
  bool is_dense(const std::vector<std::size_t>& d) const;

  /// Cohen and trivial notions encode conditions as sets of Kuratowski
  /// pairs <position, bit> of von Neumann naturals; made notions have no
  /// encoding and return nullopt.
  bool encodable() const { return encodings_.has_value(); }
  std::optional<HfSet> encode_condition(std::size_t p) const;

  bool is_cohen() const { return bits_.has_value(); }
  unsigned cohen_bits() const;  // SemanticError when not Cohen/trivial

  /// {"conditions": [ids...], "leq": [[p,q],...]} with the full strict
  /// relation; round-trips through make().
  Json to_json() const;
  static ForcingNotion from_json(const Json& j, const Limits& limits = Limits::defaults());

 private:
  ForcingNotion() = default;
  void close_and_validate();

  std::vector<std::string> ids_;
  std::vector<std::vector<bool>> leq_;  // leq_[p][q]: p <= q
  std::size_t top_ = 0;
  std::optional<std::vector<HfSet>> encodings_;
  std::optional<unsigned> bits_;
};

/// Upward closure of a minimal condition: in a finite poset these are
/// exactly the filters meeting every dense set.
struct GenericFilter {
  std::vector<std::size_t> members;  // sorted condition indices
  std::size_t generator = 0;         // the minimal condition generating it

  bool contains(std::size_t p) const;
};

/// SemanticError when m is not minimal.
GenericFilter principal_generic(const ForcingNotion& p, std::size_t m);

/// Greedy finite descent: starting below `start`, walk into each dense set
/// in turn, then down to a minimal condition.  Every listed set must be
/// dense (SemanticError naming a condition with nothing below it in the
/// set).  The result meets every listed set.
GenericFilter construct_generic(const ForcingNotion& p, std::size_t start,
                                const std::vector<std::vector<std::size_t>>& dense_sets);

/// Hereditarily finite name: a finite set of (name, condition) pairs,
/// canonicalized (sorted, duplicate-free) and immutable; copies share
/// structure.
class PName {
 public:
  PName();  // the empty name
  static PName empty();
  static PName from_entries(std::vector<std::pair<PName, std::size_t>> entries);

  std::span<const std::pair<PName, std::size_t>> entries() const;
  bool is_empty() const { return entries().empty(); }
  /// 0 for the empty name, else 1 + max subname rank.
  unsigned name_rank() const;

  static int compare(const PName& a, const PName& b);
  bool operator==(const PName& o) const { return compare(*this, o) == 0; }
  bool operator!=(const PName& o) const { return compare(*this, o) != 0; }
  bool operator<(const PName& o) const { return compare(*this, o) < 0; }

  /// Nested [[subname, conditionId], ...] arrays.
  Json to_json(const ForcingNotion& p) const;
  static PName from_json(const Json& j, const ForcingNotion& p);

 private:
  struct Node;
  explicit PName(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// x-check: {(y-check, top) : y in x}.  val(check_name(x), g) == x for every
/// filter g.
PName check_name(const HfSet& x, const ForcingNotion& p);

/// The canonical name for the generic: {(check(encode(q)), q) : q condition}.
/// val(g_name(p), g) = {encode(q) : q in g}.  SemanticError when the notion
/// has no condition encoding.
PName g_name(const ForcingNotion& p);

/// val(tau, g) = { val(sigma, g) : (sigma, q) in tau, q in g }.
HfSet val(const PName& tau, const GenericFilter& g);

/// A finite model whose domain is transitive as a single set — the crucial
/// assumption.  SemanticError otherwise.
class GroundModel {
 public:
  explicit GroundModel(FiniteModel m);
  /// The cumulative level of the given index (transitive by construction).
  static GroundModel standard(unsigned level, const Limits& limits = Limits::defaults());

  const FiniteModel& model() const { return model_; }

 private:
  FiniteModel model_;
};

/// A finite family of names, each with a unique id, used as the name side
/// of an extension.  Closure under subnames is what makes extensions
/// well-behaved; standard() builds a closed family, from_entries() accepts
/// anything and lets closure_gap() report the first hole.
class NameFamily {
 public:
  static NameFamily from_entries(std::vector<std::pair<std::string, PName>> entries);

  /// "G" -> the canonical generic name (encodable notions only), "c<i>" ->
  /// check-name of the i-th ground element, "e_<id>" -> check-name of each
  /// condition's encoding, any extra entries verbatim, then "s<k>" for the
  /// remaining subnames; closed under subnames by construction.
  static NameFamily standard(const ForcingNotion& p, const GroundModel& ground,
                             std::vector<std::pair<std::string, PName>> extra = {});

  std::span<const std::pair<std::string, PName>> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const PName* find(const std::string& id) const;
  bool contains_name(const PName& n) const;

  /// Id of the first entry with a subname missing from the family, or
  /// nullopt when subname-closed.
  std::optional<std::string> closure_gap() const;

  Json to_json(const ForcingNotion& p) const;

 private:
  NameFamily() = default;
  std::vector<std::pair<std::string, PName>> entries_;
};

/// M[G] at finite scale: the values of every family name under one generic
/// filter.
struct Extension {
  GenericFilter filter;
  std::vector<std::pair<std::string, HfSet>> values;  // family order
  FiniteModel domain;                                 // the values, deduplicated
  std::optional<HfSet> generic_value;                 // val of "G" when present

  const HfSet& value_of(const std::string& id) const;  // SemanticError if unknown
  Json to_json() const;
};

/// Builds the extension.  Validates that the family is subname-closed,
/// contains a check-name of every ground element, and (for encodable
/// notions) the canonical generic name; the ground domain is then always
/// contained in the extension domain.
Extension generic_extension(const GroundModel& ground, const ForcingNotion& p,
                            const NameFamily& family, const GenericFilter& g);

/// Replaces every name-reference parameter by its value under g.
/// SemanticError for references outside the family.
Formula resolve_names(const Formula& f, const NameFamily& family,
                      const GenericFilter& g);

/// One ground model + notion + name family, with every principal generic's
/// extension precomputed and per-sentence truth vectors memoized.  All the
/// verdict procedures run against one of these.
class ForcingSetup {
 public:
  ForcingSetup(GroundModel ground, ForcingNotion notion, NameFamily family);

  const GroundModel& ground() const { return ground_; }
  const ForcingNotion& notion() const { return notion_; }
  const NameFamily& family() const { return family_; }

  const std::vector<std::size_t>& minimals() const { return minimals_; }
  const Extension& extension_for(std::size_t minimal) const;  // SemanticError otherwise

  /// Truth of the closed sentence s in the extension generated by g.
  bool true_in_extension(const GenericFilter& g, const Formula& s) const;

  /// Truth of s per entry of minimals(), memoized by canonical text.
  const std::vector<bool>& truth_vector(const Formula& s) const;

  /// p forces s: s holds in the extension of every minimal condition below
  /// p.  SemanticError when s has free variables or unresolved references.
  bool forces(std::size_t p, const Formula& s) const;

 private:
  GroundModel ground_;
  ForcingNotion notion_;
  NameFamily family_;
  std::vector<std::size_t> minimals_;
  std::vector<Extension> extensions_;  // parallel to minimals_
  mutable std::map<std::string, std::vector<bool>> truth_memo_;
};

/// Free-function form of ForcingSetup::forces for one-shot queries.
bool forces(const ForcingNotion& p, const GroundModel& ground,
            const NameFamily& family, std::size_t condition, const Formula& s);

/// Outcome of one mechanical check, with structured witnesses.
struct Verdict {
  std::string check;
  bool pass = true;
  Json details = Json::object();

  Json to_json() const;
};

/// For every condition p: p forces !s exactly when no q <= p forces s; and
/// the corollary: if no condition forces s, every condition forces !s.
Verdict check_negation_lemma(const ForcingSetup& setup, const Formula& s);

/// s holds in the extension under g exactly when some member of g forces s.
Verdict check_truth_lemma(const ForcingSetup& setup, const Formula& s,
                          const GenericFilter& g);

/// In the extension domain: relativized extensionality (exact), regularity
/// (exact), pairing/union closure up to the reported rank cutoff, ground
/// containment, and presence of the generic value.
Verdict check_generic_model(const GroundModel& ground, const Extension& ext);

/// For every family name: the first forced sentence mentioning it (at
/// minimum "#id = #id" is forced by top), and the first genuinely
/// contingent one — forced somewhere, negation forced elsewhere — when one
/// exists within the depth bound.  The verdict: nothing is unnameable.
Verdict unnameable_search(const ForcingSetup& setup, unsigned sentence_depth,
                          const Limits& limits = Limits::defaults());

/// All nonempty domain elements none of whose members lie in the domain.
/// Empty for every transitive model.
std::vector<HfSet> find_evental_sites(const FiniteModel& m);

/// Per-element classification behind the site scan: empty elements, sites,
/// and elements sharing a member with the domain.
struct SiteScan {
  std::vector<HfSet> sites;
  std::size_t empty_count = 0;
  std::size_t sharing_count = 0;
};
SiteScan site_trichotomy(const FiniteModel& m);

enum class Axiom { Extensionality, Regularity, Pairing, Union };

struct AxiomSpec {
  Axiom axiom = Axiom::Extensionality;
  unsigned cutoff = 0;  // pairing/union only

  std::string to_text() const;
};

/// "extensionality", "regularity", "pairing@<cutoff>", "union@<cutoff>".
/// SemanticError on anything else.
AxiomSpec parse_axiom(std::string_view text);

/// Relativized axiom truth over m.  Pairing@c: every pair set of rank < c
/// formed from domain elements is itself in the domain; union@c likewise
/// for unions.
bool axiom_check(const FiniteModel& m, const AxiomSpec& axiom);

/// The largest c (up to max rank + 2) at which both pairing@c and union@c
/// hold.  Requirements grow with c, so truth is monotone downward.
unsigned closure_cutoff(const FiniteModel& m);

}  // namespace hflab
