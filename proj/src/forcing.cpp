#include "hflab/forcing.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "hflab/constructible.hpp"
#include "hflab/errors.hpp"

namespace hflab {

// ---------------------------------------------------------------------------
// Forcing notions.

std::size_t ForcingNotion::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return i;
  }
  throw SemanticError("unknown condition id '" + id + "'");
}

void ForcingNotion::close_and_validate() {
  const std::size_t n = ids_.size();
  if (n == 0) throw SemanticError("a forcing notion needs at least one condition");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ids_[i] == ids_[j]) {
        throw SemanticError("duplicate condition id '" + ids_[i] + "'");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq_[k][j]) leq_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq_[i][j] && leq_[j][i]) {
        throw SemanticError("order cycle between conditions '" + ids_[i] +
                            "' and '" + ids_[j] + "'");
      }
    }
  }
  bool found_top = false;
  for (std::size_t t = 0; t < n; ++t) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) all = all && leq_[i][t];
    if (all) {
      top_ = t;
      found_top = true;
      break;  // a second top would violate antisymmetry
    }
  }
  if (!found_top) {
    std::string tops;
    for (std::size_t t = 0; t < n; ++t) {
      bool maximal = true;
      for (std::size_t i = 0; i < n; ++i) maximal = maximal && (!leq_[t][i] || i == t);
      if (maximal) tops += (tops.empty() ? "'" : ", '") + ids_[t] + "'";
    }
    throw SemanticError("no top condition; maximal elements: " + tops);
  }
}

ForcingNotion ForcingNotion::make(
    std::vector<std::string> ids,
    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
    const Limits& limits) {
  if (ids.size() * ids.size() > limits.max_nodes) {
    throw ResourceLimitError("forcing notion too large for the node budget");
  }
  ForcingNotion p;
  p.ids_ = std::move(ids);
  p.leq_.assign(p.ids_.size(), std::vector<bool>(p.ids_.size(), false));
  for (const auto& [a, b] : leq_pairs) {
    p.leq_[p.index_of(a)][p.index_of(b)] = true;
  }
  p.close_and_validate();
  return p;
}

ForcingNotion ForcingNotion::cohen(unsigned bits, const Limits& limits) {
  if (bits == 0) throw SemanticError("a Cohen notion needs at least one bit");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < bits; ++i) {
    if (count > limits.max_nodes / 3 || count * 3 > limits.max_nodes / (count * 3)) {
      throw ResourceLimitError("Cohen poset with " + std::to_string(bits) +
                               " bits exceeds the node budget");
    }
    count *= 3;
  }
  ForcingNotion p;
  // odometer over {'x','0','1'}, leftmost position slowest; "xx..x" first
  static const char kDigits[3] = {'x', '0', '1'};
  std::vector<unsigned> odo(bits, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    std::string id(bits, 'x');
    for (unsigned i = 0; i < bits; ++i) id[i] = kDigits[odo[i]];
    p.ids_.push_back(std::move(id));
    for (unsigned i = bits; i-- > 0;) {
      if (++odo[i] < 3) break;
      odo[i] = 0;
    }
  }
  const std::size_t n = p.ids_.size();
  p.leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool extends = true;  // a <= b iff a's function extends b's
      for (unsigned i = 0; i < bits; ++i) {
        if (p.ids_[b][i] != 'x' && p.ids_[a][i] != p.ids_[b][i]) extends = false;
      }
      p.leq_[a][b] = extends;
    }
  }
  p.top_ = 0;
  p.bits_ = bits;
  std::vector<HfSet> enc;
  for (const std::string& id : p.ids_) {
    std::vector<HfSet> pairs;
    for (unsigned i = 0; i < bits; ++i) {
      if (id[i] == 'x') continue;
      pairs.push_back(kuratowski_pair(von_neumann(i), von_neumann(id[i] == '1' ? 1 : 0)));
    }
    enc.push_back(HfSet::from_elements(std::move(pairs)));
  }
  p.encodings_ = std::move(enc);
  return p;
}

ForcingNotion ForcingNotion::trivial() {
  ForcingNotion p;
  p.ids_ = {"1"};
  p.leq_ = {{true}};
  p.top_ = 0;
  p.bits_ = 0;
  p.encodings_ = std::vector<HfSet>{HfSet::empty()};
  return p;
}

bool ForcingNotion::compatible(std::size_t p, std::size_t q) const {
  for (std::size_t r = 0; r < size(); ++r) {
    if (leq_[r][p] && leq_[r][q]) return true;
  }
  return false;
}

std::vector<std::size_t> ForcingNotion::below(std::size_t p) const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < size(); ++q) {
    if (leq_[q][p]) out.push_back(q);
  }
  return out;
}

std::vector<std::size_t> ForcingNotion::minimal_conditions() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < size(); ++p) {
    bool minimal = true;
    for (std::size_t q = 0; q < size(); ++q) {
      if (q != p && leq_[q][p]) minimal = false;
    }
    if (minimal) out.push_back(p);
  }
  return out;
}

bool ForcingNotion::is_dense(const std::vector<std::size_t>& d) const {
  for (std::size_t q : d) {
    if (q >= size()) throw SemanticError("condition index out of range");
  }
  for (std::size_t p = 0; p < size(); ++p) {
    bool hit = false;
    for (std::size_t q : d) hit = hit || leq_[q][p];
    if (!hit) return false;
  }
  return true;
}

std::optional<HfSet> ForcingNotion::encode_condition(std::size_t p) const {
  if (!encodings_) return std::nullopt;
  return (*encodings_)[p];
}

unsigned ForcingNotion::cohen_bits() const {
  if (!bits_) throw SemanticError("notion is not Cohen-style");
  return *bits_;
}

Json ForcingNotion::to_json() const {
  Json j;
  j["kind"] = bits_ ? (*bits_ == 0 ? "trivial" : "cohen") : "poset";
  if (bits_ && *bits_ > 0) j["bits"] = *bits_;
  j["conditions"] = ids_;
  Json rel = Json::array();
  for (std::size_t p = 0; p < size(); ++p) {
    for (std::size_t q = 0; q < size(); ++q) {
      if (p != q && leq_[p][q]) rel.push_back(Json::array({ids_[p], ids_[q]}));
    }
  }
  j["leq"] = std::move(rel);
  return j;
}

ForcingNotion ForcingNotion::from_json(const Json& j, const Limits& limits) {
  if (!j.is_object() || !j.contains("conditions")) {
    throw ParseError("forcing notion JSON must be an object with \"conditions\"", 0);
  }
  const std::string kind = j.value("kind", std::string("poset"));
  if (kind == "trivial") return trivial();
  if (kind == "cohen") {
    if (!j.contains("bits")) throw ParseError("Cohen notion JSON needs \"bits\"", 0);
    return cohen(j["bits"].get<unsigned>(), limits);
  }
  std::vector<std::string> ids;
  for (const Json& c : j["conditions"]) ids.push_back(c.get<std::string>());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Json& e : j.value("leq", Json::array())) {
    pairs.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return make(std::move(ids), pairs, limits);
}

// ---------------------------------------------------------------------------
// Generic filters.

bool GenericFilter::contains(std::size_t p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

GenericFilter principal_generic(const ForcingNotion& p, std::size_t m) {
  if (m >= p.size()) throw SemanticError("condition index out of range");
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (q != m && p.leq(q, m)) {
      throw SemanticError("condition '" + p.id(m) + "' is not minimal");
    }
  }
  GenericFilter g;
  g.generator = m;
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (p.leq(m, q)) g.members.push_back(q);
  }
  return g;
}

GenericFilter construct_generic(const ForcingNotion& p, std::size_t start,
                                const std::vector<std::vector<std::size_t>>& dense_sets) {
  if (start >= p.size()) throw SemanticError("condition index out of range");
  for (const std::vector<std::size_t>& d : dense_sets) {
    for (std::size_t c = 0; c < p.size(); ++c) {
      bool hit = false;
      for (std::size_t q : d) {
        if (q >= p.size()) throw SemanticError("condition index out of range");
        hit = hit || p.leq(q, c);
      }
      if (!hit) {
        throw SemanticError("set is not dense: nothing in it lies below condition '" +
                            p.id(c) + "'");
      }
    }
  }
  std::size_t cur = start;
  for (const std::vector<std::size_t>& d : dense_sets) {
    std::vector<std::size_t> sorted(d.begin(), d.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t q : sorted) {
      if (p.leq(q, cur)) {
        cur = q;
        break;
      }
    }
  }
  for (std::size_t m : p.minimal_conditions()) {
    if (p.leq(m, cur)) return principal_generic(p, m);
  }
  throw SemanticError("no minimal condition below '" + p.id(cur) + "'");  // unreachable
}

// ---------------------------------------------------------------------------
// Names and valuation.

struct PName::Node {
  std::vector<std::pair<PName, std::size_t>> entries;
  unsigned rank = 0;
};

PName::PName() : PName(empty()) {}

PName PName::empty() {
  static const PName e{std::make_shared<const Node>()};
  return e;
}

PName PName::from_entries(std::vector<std::pair<PName, std::size_t>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) {
              int c = compare(a.first, b.first);
              if (c != 0) return c < 0;
              return a.second < b.second;
            });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const auto& a, const auto& b) {
                              return a.second == b.second &&
                                     compare(a.first, b.first) == 0;
                            }),
                entries.end());
  auto node = std::make_shared<Node>();
  for (const auto& [sub, cond] : entries) {
    node->rank = std::max(node->rank, sub.name_rank() + 1);
  }
  node->entries = std::move(entries);
  return PName(std::move(node));
}

std::span<const std::pair<PName, std::size_t>> PName::entries() const {
  return node_->entries;
}

unsigned PName::name_rank() const { return node_->rank; }

int PName::compare(const PName& a, const PName& b) {
  if (a.node_ == b.node_) return 0;
  const auto& ae = a.node_->entries;
  const auto& be = b.node_->entries;
  for (std::size_t i = 0; i < ae.size() && i < be.size(); ++i) {
    int c = compare(ae[i].first, be[i].first);
    if (c != 0) return c;
    if (ae[i].second != be[i].second) return ae[i].second < be[i].second ? -1 : 1;
  }
  if (ae.size() != be.size()) return ae.size() < be.size() ? -1 : 1;
  return 0;
}

Json PName::to_json(const ForcingNotion& p) const {
  Json j = Json::array();
  for (const auto& [sub, cond] : entries()) {
    j.push_back(Json::array({sub.to_json(p), p.id(cond)}));
  }
  return j;
}

PName PName::from_json(const Json& j, const ForcingNotion& p) {
  if (!j.is_array()) throw ParseError("a name is a JSON array of [name, condition] pairs", 0);
  std::vector<std::pair<PName, std::size_t>> entries;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("a name entry is a [name, condition] pair", 0);
    }
    entries.emplace_back(from_json(e[0], p), p.index_of(e[1].get<std::string>()));
  }
  return from_entries(std::move(entries));
}

PName check_name(const HfSet& x, const ForcingNotion& p) {
  std::vector<std::pair<PName, std::size_t>> entries;
  for (const HfSet& y : x.elements()) {
    entries.emplace_back(check_name(y, p), p.top());
  }
  return PName::from_entries(std::move(entries));
}

PName g_name(const ForcingNotion& p) {
  if (!p.encodable()) {
    throw SemanticError("notion has no condition encoding; the canonical generic name needs one");
  }
  std::vector<std::pair<PName, std::size_t>> entries;
  for (std::size_t q = 0; q < p.size(); ++q) {
    entries.emplace_back(check_name(*p.encode_condition(q), p), q);
  }
  return PName::from_entries(std::move(entries));
}

HfSet val(const PName& tau, const GenericFilter& g) {
  std::vector<HfSet> elems;
  for (const auto& [sub, cond] : tau.entries()) {
    if (g.contains(cond)) elems.push_back(val(sub, g));
  }
  return HfSet::from_elements(std::move(elems));
}

// ---------------------------------------------------------------------------
// Ground models and name families.

GroundModel::GroundModel(FiniteModel m) : model_(std::move(m)) {
  if (!model_.as_set().is_transitive()) {
    throw SemanticError("ground domain is not transitive");
  }
}

GroundModel GroundModel::standard(unsigned level, const Limits& limits) {
  return GroundModel(v_level(level, limits).contents);
}

namespace {

void require_identifier(const std::string& id) {
  if (id.empty()) throw SemanticError("name id must not be empty");
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
      throw SemanticError("name id '" + id + "' must use identifier characters");
    }
  }
}

}  // namespace

NameFamily NameFamily::from_entries(std::vector<std::pair<std::string, PName>> entries) {
  NameFamily f;
  for (auto& [id, name] : entries) {
    require_identifier(id);
    for (const auto& [existing, _] : f.entries_) {
      if (existing == id) throw SemanticError("duplicate name id '" + id + "'");
    }
    f.entries_.emplace_back(std::move(id), std::move(name));
  }
  return f;
}

NameFamily NameFamily::standard(const ForcingNotion& p, const GroundModel& ground,
                                std::vector<std::pair<std::string, PName>> extra) {
  std::vector<std::pair<std::string, PName>> entries;
  if (p.encodable()) entries.emplace_back("G", g_name(p));
  std::size_t i = 0;
  for (const HfSet& x : ground.model().domain()) {
    entries.emplace_back("c" + std::to_string(i++), check_name(x, p));
  }
  if (p.encodable()) {
    for (std::size_t q = 0; q < p.size(); ++q) {
      entries.emplace_back("e_" + p.id(q), check_name(*p.encode_condition(q), p));
    }
  }
  for (auto& e : extra) entries.push_back(std::move(e));
  // close under subnames, appending fresh "s<k>" entries
  std::size_t fresh = 0;
  for (std::size_t at = 0; at < entries.size(); ++at) {
    for (const auto& [sub, cond] : entries[at].second.entries()) {
      bool present = false;
      for (const auto& [_, known] : entries) present = present || known == sub;
      if (!present) entries.emplace_back("s" + std::to_string(fresh++), sub);
    }
  }
  return from_entries(std::move(entries));
}

const PName* NameFamily::find(const std::string& id) const {
  for (const auto& [eid, name] : entries_) {
    if (eid == id) return &name;
  }
  return nullptr;
}

bool NameFamily::contains_name(const PName& n) const {
  for (const auto& [_, name] : entries_) {
    if (name == n) return true;
  }
  return false;
}

std::optional<std::string> NameFamily::closure_gap() const {
  for (const auto& [id, name] : entries_) {
    for (const auto& [sub, cond] : name.entries()) {
      if (!contains_name(sub)) return id;
    }
  }
  return std::nullopt;
}

Json NameFamily::to_json(const ForcingNotion& p) const {
  Json j = Json::array();
  for (const auto& [id, name] : entries_) {
    j.push_back(Json{{"id", id}, {"name", name.to_json(p)}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Extensions.

const HfSet& Extension::value_of(const std::string& id) const {
  for (const auto& [eid, v] : values) {
    if (eid == id) return v;
  }
  throw SemanticError("no name '" + id + "' in the extension");
}

Json Extension::to_json() const {
  Json j;
  j["generator"] = filter.generator;
  j["members"] = filter.members;
  Json vals = Json::array();
  for (const auto& [id, v] : values) {
    vals.push_back(Json{{"id", id}, {"value", set_to_json(v)}});
  }
  j["values"] = std::move(vals);
  Json dom = Json::array();
  for (const HfSet& x : domain.domain()) dom.push_back(set_to_json(x));
  j["domain"] = std::move(dom);
  j["genericValue"] = generic_value ? set_to_json(*generic_value) : Json(nullptr);
  return j;
}

Extension generic_extension(const GroundModel& ground, const ForcingNotion& p,
                            const NameFamily& family, const GenericFilter& g) {
  if (auto gap = family.closure_gap()) {
    throw SemanticError("name family is not subname-closed: entry '" + *gap +
                        "' has a missing subname");
  }
  for (const HfSet& x : ground.model().domain()) {
    if (!family.contains_name(check_name(x, p))) {
      throw SemanticError("name family lacks a check-name for a ground element");
    }
  }
  if (p.encodable() && !family.contains_name(g_name(p))) {
    throw SemanticError("name family lacks the canonical generic name");
  }
  Extension ext;
  ext.filter = g;
  std::vector<HfSet> dom;
  for (const auto& [id, name] : family.entries()) {
    ext.values.emplace_back(id, val(name, g));
    dom.push_back(ext.values.back().second);
  }
  ext.domain = FiniteModel(std::move(dom));
  if (p.encodable()) ext.generic_value = val(g_name(p), g);
  return ext;
}

Formula resolve_names(const Formula& f, const NameFamily& family,
                      const GenericFilter& g) {
  auto term = [&](const Term& t) {
    if (t.is_var() || t.parameter().is_ground()) return t;
    const std::string& id = t.parameter().name_id();
    const PName* name = family.find(id);
    if (!name) throw SemanticError("unresolved name reference '#" + id + "'");
    return Term::param(Parameter::ground(val(*name, g)));
  };
  switch (f.kind()) {
    case Formula::Kind::Membership:
      return Formula::membership(term(f.lhs()), term(f.rhs()));
    case Formula::Kind::Equality:
      return Formula::equality(term(f.lhs()), term(f.rhs()));
    case Formula::Kind::Not:
      return Formula::negation(resolve_names(f.body(), family, g));
    case Formula::Kind::And:
      return Formula::conjunction(resolve_names(f.left(), family, g),
                                  resolve_names(f.right(), family, g));
    case Formula::Kind::Or:
      return Formula::disjunction(resolve_names(f.left(), family, g),
                                  resolve_names(f.right(), family, g));
    case Formula::Kind::Implies:
      return Formula::implication(resolve_names(f.left(), family, g),
                                  resolve_names(f.right(), family, g));
    case Formula::Kind::Exists:
      return Formula::exists(f.bound_var(), resolve_names(f.body(), family, g));
    case Formula::Kind::ForAll:
      return Formula::forall(f.bound_var(), resolve_names(f.body(), family, g));
  }
  return f;
}

// ---------------------------------------------------------------------------
// The forcing relation.

ForcingSetup::ForcingSetup(GroundModel ground, ForcingNotion notion, NameFamily family)
    : ground_(std::move(ground)),
      notion_(std::move(notion)),
      family_(std::move(family)),
      minimals_(notion_.minimal_conditions()) {
  for (std::size_t m : minimals_) {
    extensions_.push_back(
        generic_extension(ground_, notion_, family_, principal_generic(notion_, m)));
  }
}

const Extension& ForcingSetup::extension_for(std::size_t minimal) const {
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    if (minimals_[i] == minimal) return extensions_[i];
  }
  throw SemanticError("condition is not minimal");
}

bool ForcingSetup::true_in_extension(const GenericFilter& g, const Formula& s) const {
  if (!s.is_closed()) throw SemanticError("sentence has free variables");
  Formula resolved = resolve_names(s, family_, g);
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    if (minimals_[i] == g.generator) return eval(extensions_[i].domain, resolved, {});
  }
  return eval(generic_extension(ground_, notion_, family_, g).domain, resolved, {});
}

const std::vector<bool>& ForcingSetup::truth_vector(const Formula& s) const {
  std::string key = s.to_text();
  auto it = truth_memo_.find(key);
  if (it != truth_memo_.end()) return it->second;
  std::vector<bool> tv;
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    tv.push_back(true_in_extension(extensions_[i].filter, s));
  }
  return truth_memo_.emplace(std::move(key), std::move(tv)).first->second;
}

bool ForcingSetup::forces(std::size_t p, const Formula& s) const {
  if (p >= notion_.size()) throw SemanticError("condition index out of range");
  const std::vector<bool>& tv = truth_vector(s);
  for (std::size_t i = 0; i < minimals_.size(); ++i) {
    if (notion_.leq(minimals_[i], p) && !tv[i]) return false;
  }
  return true;
}

bool forces(const ForcingNotion& p, const GroundModel& ground,
            const NameFamily& family, std::size_t condition, const Formula& s) {
  return ForcingSetup(ground, p, family).forces(condition, s);
}

// ---------------------------------------------------------------------------
// Verdicts.

Json Verdict::to_json() const {
  return Json{{"check", check}, {"pass", pass}, {"details", details}};
}

Verdict check_negation_lemma(const ForcingSetup& setup, const Formula& s) {
  const ForcingNotion& p = setup.notion();
  Formula neg = Formula::negation(s);
  Verdict v{.check = "negation-lemma"};
  Json counterexamples = Json::array();
  bool some_forces = false;
  for (std::size_t c = 0; c < p.size(); ++c) {
    bool lhs = setup.forces(c, neg);
    bool below = false;
    for (std::size_t q : p.below(c)) below = below || setup.forces(q, s);
    some_forces = some_forces || setup.forces(c, s);
    if (lhs != !below) {
      counterexamples.push_back(Json{{"condition", p.id(c)},
                                     {"forcesNegation", lhs},
                                     {"someBelowForces", below}});
    }
  }
  bool corollary_holds = true;
  if (!some_forces) {
    for (std::size_t c = 0; c < p.size(); ++c) {
      corollary_holds = corollary_holds && setup.forces(c, neg);
    }
  }
  v.pass = counterexamples.empty() && corollary_holds;
  v.details = Json{{"sentence", s.to_text()},
                   {"counterexamples", std::move(counterexamples)},
                   {"corollaryApplicable", !some_forces},
                   {"corollaryHolds", corollary_holds}};
  return v;
}

Verdict check_truth_lemma(const ForcingSetup& setup, const Formula& s,
                          const GenericFilter& g) {
  bool lhs = setup.true_in_extension(g, s);
  bool rhs = false;
  for (std::size_t c : g.members) rhs = rhs || setup.forces(c, s);
  Verdict v{.check = "truth-lemma"};
  v.pass = lhs == rhs;
  v.details = Json{{"sentence", s.to_text()},
                   {"generator", setup.notion().id(g.generator)},
                   {"trueInExtension", lhs},
                   {"forcedInFilter", rhs}};
  return v;
}

Verdict check_generic_model(const GroundModel& ground, const Extension& ext) {
  Verdict v{.check = "generic-model"};
  Json witnesses = Json::array();
  std::span<const HfSet> dom = ext.domain.domain();

  bool ground_contained = true;
  for (const HfSet& x : ground.model().domain()) {
    if (!ext.domain.contains(x)) {
      ground_contained = false;
      witnesses.push_back(Json{{"missingGroundElement", x.to_text()}});
      break;
    }
  }

  bool extensionality = true;
  for (std::size_t i = 0; i < dom.size() && extensionality; ++i) {
    for (std::size_t j = i + 1; j < dom.size() && extensionality; ++j) {
      bool discerned = false;
      for (const HfSet& m : dom) {
        if (is_member(m, dom[i]) != is_member(m, dom[j])) discerned = true;
      }
      if (!discerned) {
        extensionality = false;
        witnesses.push_back(Json{{"indiscerniblePair",
                                  Json::array({dom[i].to_text(), dom[j].to_text()})}});
      }
    }
  }

  bool regularity = true;
  for (const HfSet& x : dom) {
    if (x.is_empty()) continue;
    bool has_minimal = false;
    for (const HfSet& y : x.elements()) {
      bool meets = false;
      for (const HfSet& z : y.elements()) meets = meets || is_member(z, x);
      has_minimal = has_minimal || !meets;
    }
    if (!has_minimal) {
      regularity = false;
      witnesses.push_back(Json{{"noMinimalMember", x.to_text()}});
    }
  }

  unsigned cutoff = closure_cutoff(ext.domain);
  bool pairing = axiom_check(ext.domain, {Axiom::Pairing, cutoff});
  bool unions = axiom_check(ext.domain, {Axiom::Union, cutoff});

  Json generic_present = Json(nullptr);
  bool generic_ok = true;
  if (ext.generic_value) {
    generic_ok = ext.domain.contains(*ext.generic_value);
    generic_present = generic_ok;
  }

  v.pass = ground_contained && extensionality && regularity && pairing && unions &&
           generic_ok;
  v.details = Json{{"groundContained", ground_contained},
                   {"extensionality", extensionality},
                   {"regularity", regularity},
                   {"closureCutoff", cutoff},
                   {"pairingAtCutoff", pairing},
                   {"unionAtCutoff", unions},
                   {"genericValuePresent", generic_present},
                   {"witnesses", std::move(witnesses)}};
  return v;
}

Verdict unnameable_search(const ForcingSetup& setup, unsigned sentence_depth,
                          const Limits& limits) {
  if (sentence_depth == 0) throw SemanticError("sentence depth must be at least 1");
  const ForcingNotion& p = setup.notion();
  Verdict v{.check = "unnameable-impossibility"};
  Json names = Json::array();
  std::size_t fallback_count = 0;
  std::size_t contingent_count = 0;
  for (const auto& [id, name] : setup.family().entries()) {
    std::vector<Parameter> vocab{Parameter::name_ref(id)};
    if (id != "G" && setup.family().find("G")) {
      vocab.push_back(Parameter::name_ref("G"));
    }
    std::optional<Json> first_forced;
    std::optional<Json> contingent;
    FormulaEnumerator en({}, vocab, sentence_depth, limits);
    while (auto s = en.next()) {
      if (!s->mentions_name(id)) continue;
      std::optional<std::size_t> forcer;
      for (std::size_t c = 0; c < p.size() && !forcer; ++c) {
        if (setup.forces(c, *s)) forcer = c;
      }
      if (!forcer) continue;
      if (!first_forced) {
        first_forced = Json{{"sentence", s->to_text()}, {"condition", p.id(*forcer)}};
      }
      if (!contingent) {
        Formula neg = Formula::negation(*s);
        for (std::size_t c = 0; c < p.size(); ++c) {
          if (setup.forces(c, neg)) {
            contingent = Json{{"sentence", s->to_text()},
                              {"forcedBy", p.id(*forcer)},
                              {"negationForcedBy", p.id(c)}};
            break;
          }
        }
      }
      if (first_forced && contingent) break;
    }
    bool fallback =
        first_forced && (*first_forced)["sentence"] == "#" + id + " = #" + id;
    if (fallback) ++fallback_count;
    if (contingent) ++contingent_count;
    v.pass = v.pass && first_forced.has_value();
    names.push_back(Json{{"name", id},
                         {"firstForced", first_forced ? *first_forced : Json(nullptr)},
                         {"contingent", contingent ? *contingent : Json(nullptr)},
                         {"reflexiveFallback", fallback}});
  }
  v.details = Json{{"sentenceDepth", sentence_depth},
                   {"names", std::move(names)},
                   {"fallbackCount", fallback_count},
                   {"contingentCount", contingent_count}};
  return v;
}

// ---------------------------------------------------------------------------
// Evental sites.

std::vector<HfSet> find_evental_sites(const FiniteModel& m) {
  std::vector<HfSet> sites;
  for (const HfSet& x : m.domain()) {
    if (x.is_empty()) continue;
    bool presented = false;
    for (const HfSet& y : x.elements()) presented = presented || m.contains(y);
    if (!presented) sites.push_back(x);
  }
  return sites;
}

SiteScan site_trichotomy(const FiniteModel& m) {
  SiteScan scan;
  for (const HfSet& x : m.domain()) {
    if (x.is_empty()) {
      ++scan.empty_count;
      continue;
    }
    bool presented = false;
    for (const HfSet& y : x.elements()) presented = presented || m.contains(y);
    if (presented) {
      ++scan.sharing_count;
    } else {
      scan.sites.push_back(x);
    }
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Axiom fragments.

std::string AxiomSpec::to_text() const {
  switch (axiom) {
    case Axiom::Extensionality: return "extensionality";
    case Axiom::Regularity: return "regularity";
    case Axiom::Pairing: return "pairing@" + std::to_string(cutoff);
    case Axiom::Union: return "union@" + std::to_string(cutoff);
  }
  return "";
}

AxiomSpec parse_axiom(std::string_view text) {
  if (text == "extensionality") return {Axiom::Extensionality, 0};
  if (text == "regularity") return {Axiom::Regularity, 0};
  for (auto [prefix, axiom] : {std::pair{std::string_view("pairing@"), Axiom::Pairing},
                               std::pair{std::string_view("union@"), Axiom::Union}}) {
    if (text.substr(0, prefix.size()) == prefix) {
      std::string_view num = text.substr(prefix.size());
      unsigned cutoff = 0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), cutoff);
      if (ec == std::errc() && ptr == num.data() + num.size() && !num.empty()) {
        return {axiom, cutoff};
      }
    }
  }
  throw SemanticError("unknown axiom tag '" + std::string(text) + "'");
}

bool axiom_check(const FiniteModel& m, const AxiomSpec& axiom) {
  std::span<const HfSet> dom = m.domain();
  switch (axiom.axiom) {
    case Axiom::Extensionality: {
      for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i + 1; j < dom.size(); ++j) {
          bool discerned = false;
          for (const HfSet& w : dom) {
            if (is_member(w, dom[i]) != is_member(w, dom[j])) discerned = true;
          }
          if (!discerned) return false;
        }
      }
      return true;
    }
    case Axiom::Regularity: {
      for (const HfSet& x : dom) {
        if (x.is_empty()) continue;
        bool has_minimal = false;
        for (const HfSet& y : x.elements()) {
          bool meets = false;
          for (const HfSet& z : y.elements()) meets = meets || is_member(z, x);
          has_minimal = has_minimal || !meets;
        }
        if (!has_minimal) return false;
      }
      return true;
    }
    case Axiom::Pairing: {
      for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i; j < dom.size(); ++j) {
          HfSet pr = pair_set(dom[i], dom[j]);
          if (rank(pr) < axiom.cutoff && !m.contains(pr)) return false;
        }
      }
      return true;
    }
    case Axiom::Union: {
      for (const HfSet& x : dom) {
        HfSet u = union_of(x);
        if (rank(u) < axiom.cutoff && !m.contains(u)) return false;
      }
      return true;
    }
  }
  return false;
}

unsigned closure_cutoff(const FiniteModel& m) {
  unsigned max_rank = 0;
  for (const HfSet& x : m.domain()) max_rank = std::max(max_rank, rank(x));
  unsigned best = 0;
  for (unsigned c = 0; c <= max_rank + 2; ++c) {
    if (axiom_check(m, {Axiom::Pairing, c}) && axiom_check(m, {Axiom::Union, c})) {
      best = c;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace hflab
