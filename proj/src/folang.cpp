#include "hflab/folang.hpp"

#include <algorithm>
#include <cctype>

#include "hflab/errors.hpp"

namespace hflab {

// ---------------------------------------------------------------------------
// Terms.

std::string Parameter::to_text() const {
  if (is_ground()) return set().to_text();
  return "#" + name_id();
}

std::string Term::to_text() const {
  if (is_var()) return var_name();
  return parameter().to_text();
}

// ---------------------------------------------------------------------------
// Formula nodes.

namespace {
struct AtomP {
  Term l, r;
};
struct UnaryP {
  Formula sub;
};
struct BinaryP {
  Formula l, r;
};
struct QuantP {
  Var v;
  Formula body;
};
}  // namespace

struct Formula::Node {
  Kind kind;
  std::variant<AtomP, UnaryP, BinaryP, QuantP> payload;
  unsigned depth = 1;
  std::size_t size = 1;
};

Formula Formula::membership(Term l, Term r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Membership, AtomP{std::move(l), std::move(r)}, 1, 1}));
}

Formula Formula::equality(Term l, Term r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Equality, AtomP{std::move(l), std::move(r)}, 1, 1}));
}

Formula Formula::negation(Formula f) {
  unsigned d = f.depth() + 1;
  std::size_t s = f.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::Not, UnaryP{std::move(f)}, d, s}));
}

Formula Formula::conjunction(Formula l, Formula r) {
  unsigned d = std::max(l.depth(), r.depth()) + 1;
  std::size_t s = l.size() + r.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, BinaryP{std::move(l), std::move(r)}, d, s}));
}
Formula Formula::disjunction(Formula l, Formula r) {
  unsigned d = std::max(l.depth(), r.depth()) + 1;
  std::size_t s = l.size() + r.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, BinaryP{std::move(l), std::move(r)}, d, s}));
}
Formula Formula::implication(Formula l, Formula r) {
  unsigned d = std::max(l.depth(), r.depth()) + 1;
  std::size_t s = l.size() + r.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, BinaryP{std::move(l), std::move(r)}, d, s}));
}

Formula Formula::exists(Var v, Formula body) {
  unsigned d = body.depth() + 1;
  std::size_t s = body.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::Exists, QuantP{std::move(v), std::move(body)}, d, s}));
}

Formula Formula::forall(Var v, Formula body) {
  unsigned d = body.depth() + 1;
  std::size_t s = body.size() + 1;
  return Formula(std::make_shared<const Node>(
      Node{Kind::ForAll, QuantP{std::move(v), std::move(body)}, d, s}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  return node_->kind == Kind::Membership || node_->kind == Kind::Equality;
}

const Term& Formula::lhs() const { return std::get<AtomP>(node_->payload).l; }
const Term& Formula::rhs() const { return std::get<AtomP>(node_->payload).r; }
const Formula& Formula::left() const { return std::get<BinaryP>(node_->payload).l; }
const Formula& Formula::right() const { return std::get<BinaryP>(node_->payload).r; }

const Formula& Formula::body() const {
  if (node_->kind == Kind::Not) return std::get<UnaryP>(node_->payload).sub;
  return std::get<QuantP>(node_->payload).body;
}

const Var& Formula::bound_var() const { return std::get<QuantP>(node_->payload).v; }

unsigned Formula::depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }

namespace {

void collect_free(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f.kind()) {
    case Formula::Kind::Membership:
    case Formula::Kind::Equality:
      for (const Term* t : {&f.lhs(), &f.rhs()}) {
        if (t->is_var() && !bound.count(t->var_name())) out.insert(t->var_name());
      }
      return;
    case Formula::Kind::Not:
      collect_free(f.body(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::ForAll: {
      bool inserted = bound.insert(f.bound_var()).second;
      collect_free(f.body(), bound, out);
      if (inserted) bound.erase(f.bound_var());
      return;
    }
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Membership:
    case Formula::Kind::Equality:
      for (const Term* t : {&f.lhs(), &f.rhs()}) {
        if (!t->is_var() && !t->parameter().is_ground()) {
          out.insert(t->parameter().name_id());
        }
      }
      return;
    case Formula::Kind::Not:
      collect_names(f.body(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_names(f.left(), out);
      collect_names(f.right(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::ForAll:
      collect_names(f.body(), out);
      return;
  }
}

}  // namespace

std::set<Var> Formula::free_vars() const {
  std::set<Var> bound, out;
  collect_free(*this, bound, out);
  return out;
}

std::set<std::string> Formula::name_refs() const {
  std::set<std::string> out;
  collect_names(*this, out);
  return out;
}

bool Formula::mentions_name(const std::string& id) const {
  return name_refs().count(id) != 0;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  if (node_->size != o.node_->size || node_->depth != o.node_->depth) return false;
  switch (node_->kind) {
    case Kind::Membership:
    case Kind::Equality:
      return lhs() == o.lhs() && rhs() == o.rhs();
    case Kind::Not:
      return body() == o.body();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return left() == o.left() && right() == o.right();
    case Kind::Exists:
    case Kind::ForAll:
      return bound_var() == o.bound_var() && body() == o.body();
  }
  return false;
}

std::string Formula::to_text() const {
  switch (kind()) {
    case Kind::Membership:
      return lhs().to_text() + " in " + rhs().to_text();
    case Kind::Equality:
      return lhs().to_text() + " = " + rhs().to_text();
    case Kind::Not:
      return "!(" + body().to_text() + ")";
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: {
      const char* op = kind() == Kind::And ? " & " : (kind() == Kind::Or ? " | " : " -> ");
      // A quantifier on the left would swallow the operator: its scope runs
      // to the end of the enclosing group.  Parenthesize it.
      std::string l = left().to_text();
      if (left().kind() == Kind::Exists || left().kind() == Kind::ForAll) {
        l = "(" + l + ")";
      }
      return "(" + l + op + right().to_text() + ")";
    }
    case Kind::Exists:
      return "E " + bound_var() + " . " + body().to_text();
    case Kind::ForAll:
      return "A " + bound_var() + " . " + body().to_text();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Models.

FiniteModel::FiniteModel(std::vector<HfSet> domain) : domain_(std::move(domain)) {
  std::sort(domain_.begin(), domain_.end());
  domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
}

bool FiniteModel::contains(const HfSet& x) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  return it != domain_.end() && *it == x;
}

HfSet FiniteModel::as_set() const { return HfSet::from_elements(domain_); }

// ---------------------------------------------------------------------------
// Parser.

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool reserved_word(std::string_view w) { return w == "E" || w == "A" || w == "in"; }

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos == s.size();
  }

  /// Consumes tok if it appears next (after whitespace).
  bool accept(std::string_view tok) {
    skip_ws();
    if (s.substr(pos, tok.size()) != tok) return false;
    // keyword tokens must not glue onto a longer identifier
    if (ident_start(tok.front()) && pos + tok.size() < s.size() &&
        ident_char(s[pos + tok.size()])) {
      return false;
    }
    pos += tok.size();
    return true;
  }

  void expect(std::string_view tok, const char* what) {
    if (!accept(tok)) throw ParseError(std::string("expected ") + what, pos);
  }

  std::string peek_word() {
    skip_ws();
    if (pos >= s.size() || !ident_start(s[pos])) return {};
    std::size_t end = pos;
    while (end < s.size() && ident_char(s[end])) ++end;
    return std::string(s.substr(pos, end - pos));
  }

  std::string take_ident(const char* what) {
    std::string w = peek_word();
    if (w.empty()) throw ParseError(std::string("expected ") + what, pos);
    pos += w.size();
    return w;
  }

  Formula parse_formula() { return parse_imp(); }

  Formula parse_imp() {
    Formula l = parse_or();
    if (accept("->") || accept("→")) {
      return Formula::implication(std::move(l), parse_imp());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (accept("|") || accept("∨")) {
      l = Formula::disjunction(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (accept("&") || accept("∧")) {
      l = Formula::conjunction(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (accept("!") || accept("¬")) return Formula::negation(parse_unary());
    bool ex = accept("E") || accept("∃");
    bool fa = !ex && (accept("A") || accept("∀"));
    if (ex || fa) {
      std::string v = take_ident("variable after quantifier");
      if (reserved_word(v)) {
        throw ParseError("reserved word '" + v + "' used as variable", pos - v.size());
      }
      expect(".", "'.' after quantified variable");
      Formula body = parse_imp();  // the dot scopes as far right as possible
      return ex ? Formula::exists(std::move(v), std::move(body))
                : Formula::forall(std::move(v), std::move(body));
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (accept("(")) {
      Formula f = parse_imp();
      expect(")", "')'");
      return f;
    }
    Term l = parse_term();
    bool member = accept("in") || accept("∈");
    if (!member && !accept("=")) {
      throw ParseError("expected 'in' or '='", pos);
    }
    Term r = parse_term();
    return member ? Formula::membership(std::move(l), std::move(r))
                  : Formula::equality(std::move(l), std::move(r));
  }

  Term parse_term() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("expected term", pos);
    const char c = s[pos];
    if (c == '#') {
      ++pos;
      std::string id = take_ident("name identifier after '#'");
      return Term::param(Parameter::name_ref(std::move(id)));
    }
    if (c == '{' || c == '<' || std::isdigit(static_cast<unsigned char>(c))) {
      return Term::param(Parameter::ground(parse_set_literal(s, pos)));
    }
    std::string w = peek_word();
    if (w.empty()) throw ParseError("expected term", pos);
    if (reserved_word(w)) {
      throw ParseError("reserved word '" + w + "' used as variable", pos);
    }
    pos += w.size();
    return Term::var(std::move(w));
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  Formula f = p.parse_formula();
  if (!p.at_end()) throw ParseError("unexpected trailing input", p.pos);
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

struct Evaluator {
  const FiniteModel& m;
  Assignment env;
  EvalTrace* trace;

  HfSet resolve(const Term& t) const {
    if (t.is_var()) {
      auto it = env.find(t.var_name());
      if (it == env.end()) {
        throw SemanticError("unassigned variable '" + t.var_name() + "'");
      }
      return it->second;
    }
    const Parameter& p = t.parameter();
    if (!p.is_ground()) {
      throw SemanticError("unresolved name reference '#" + p.name_id() +
                          "' outside forcing evaluation");
    }
    return p.set();
  }

  bool run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Membership:
        return is_member(resolve(f.lhs()), resolve(f.rhs()));
      case Formula::Kind::Equality:
        return resolve(f.lhs()) == resolve(f.rhs());
      case Formula::Kind::Not:
        return !run(f.body());
      case Formula::Kind::And:
        return run(f.left()) && run(f.right());
      case Formula::Kind::Or:
        return run(f.left()) || run(f.right());
      case Formula::Kind::Implies:
        return !run(f.left()) || run(f.right());
      case Formula::Kind::Exists:
      case Formula::Kind::ForAll: {
        const bool exists = f.kind() == Formula::Kind::Exists;
        const Var& v = f.bound_var();
        auto prev = env.find(v);
        std::optional<HfSet> saved;
        if (prev != env.end()) saved = prev->second;
        bool result = !exists;
        for (const HfSet& d : m.domain()) {
          env[v] = d;
          if (run(f.body()) == exists) {
            result = exists;
            if (trace) {
              trace->lines.push_back((exists ? "E " : "A ") + v +
                                     (exists ? ": witness " : ": counterexample ") +
                                     v + " = " + d.to_text());
            }
            break;
          }
        }
        if (trace && result != exists) {
          trace->lines.push_back((exists ? "E " : "A ") + v +
                                 (exists ? ": no witness" : ": holds for all"));
        }
        if (saved) {
          env[v] = *saved;
        } else {
          env.erase(v);
        }
        return result;
      }
    }
    return false;
  }
};

}  // namespace

bool eval(const FiniteModel& m, const Formula& f, const Assignment& assignment,
          EvalTrace* trace) {
  Evaluator ev{m, assignment, trace};
  return ev.run(f);
}

// ---------------------------------------------------------------------------
// Substitution.

namespace {

Term subst_term(const Term& t, const Var& v, const Parameter& p) {
  if (t.is_var() && t.var_name() == v) return Term::param(p);
  return t;
}

Formula subst_rec(const Formula& f, const Var& v, const Parameter& p) {
  switch (f.kind()) {
    case Formula::Kind::Membership:
      return Formula::membership(subst_term(f.lhs(), v, p), subst_term(f.rhs(), v, p));
    case Formula::Kind::Equality:
      return Formula::equality(subst_term(f.lhs(), v, p), subst_term(f.rhs(), v, p));
    case Formula::Kind::Not:
      return Formula::negation(subst_rec(f.body(), v, p));
    case Formula::Kind::And:
      return Formula::conjunction(subst_rec(f.left(), v, p), subst_rec(f.right(), v, p));
    case Formula::Kind::Or:
      return Formula::disjunction(subst_rec(f.left(), v, p), subst_rec(f.right(), v, p));
    case Formula::Kind::Implies:
      return Formula::implication(subst_rec(f.left(), v, p), subst_rec(f.right(), v, p));
    case Formula::Kind::Exists:
    case Formula::Kind::ForAll: {
      if (f.bound_var() == v) return f;  // no free occurrences inside
      Formula body = subst_rec(f.body(), v, p);
      return f.kind() == Formula::Kind::Exists
                 ? Formula::exists(f.bound_var(), std::move(body))
                 : Formula::forall(f.bound_var(), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const Var& v, const Parameter& p) {
  if (f.free_vars().count(v) == 0) {
    throw SemanticError("variable '" + v + "' is not free in the formula");
  }
  return subst_rec(f, v, p);
}

// ---------------------------------------------------------------------------
// Enumeration.

struct FormulaEnumerator::Impl {
  std::vector<Var> free_list;       // sorted free variables
  std::set<Var> free_set;
  std::vector<Parameter> params;
  unsigned max_depth;
  Budget budget;
  std::vector<Var> bound_names;     // canonical name per scope depth

  struct Key {
    unsigned s, d, k;
    bool operator<(const Key& o) const {
      if (s != o.s) return s < o.s;
      if (d != o.d) return d < o.d;
      return k < o.k;
    }
  };
  std::map<Key, std::shared_ptr<const std::vector<Formula>>> memo;

  unsigned cur_size = 0;
  std::size_t max_size = 0;
  std::shared_ptr<const std::vector<Formula>> cur;
  std::size_t pos = 0;

  std::vector<Term> terms(unsigned k) const {
    std::vector<Term> ts;
    for (const Var& v : free_list) ts.push_back(Term::var(v));
    for (unsigned i = 0; i < k; ++i) ts.push_back(Term::var(bound_names[i]));
    for (const Parameter& p : params) ts.push_back(Term::param(p));
    return ts;
  }

  const std::vector<Formula>& gen(unsigned s, unsigned d, unsigned k) {
    static const std::vector<Formula> kNone;
    if (s == 0 || d == 0) return kNone;
    Key key{s, d, k};
    auto it = memo.find(key);
    if (it != memo.end()) return *it->second;

    std::vector<Formula> out;
    if (s == 1) {
      std::vector<Term> ts = terms(k);
      for (const Term& l : ts) {
        for (const Term& r : ts) out.push_back(Formula::membership(l, r));
      }
      for (const Term& l : ts) {
        for (const Term& r : ts) out.push_back(Formula::equality(l, r));
      }
    } else if (d >= 2) {
      for (const Formula& f : gen(s - 1, d - 1, k)) {
        out.push_back(Formula::negation(f));
      }
      using K = Formula::Kind;
      for (K op : {K::And, K::Or, K::Implies}) {
        for (unsigned sl = 1; sl + 1 < s; ++sl) {
          // batches live in shared_ptrs inside the map, so these references
          // survive further gen() calls
          const std::vector<Formula>& lb = gen(sl, d - 1, k);
          const std::vector<Formula>& rb = gen(s - 1 - sl, d - 1, k);
          for (const Formula& l : lb) {
            for (const Formula& r : rb) {
              out.push_back(op == K::And   ? Formula::conjunction(l, r)
                            : op == K::Or  ? Formula::disjunction(l, r)
                                           : Formula::implication(l, r));
            }
          }
        }
      }
      const Var& v = bound_names[k];
      for (const Formula& f : gen(s - 1, d - 1, k + 1)) {
        out.push_back(Formula::exists(v, f));
      }
      for (const Formula& f : gen(s - 1, d - 1, k + 1)) {
        out.push_back(Formula::forall(v, f));
      }
    }
    budget.charge(out.size());
    auto stored = std::make_shared<const std::vector<Formula>>(std::move(out));
    memo.emplace(key, stored);
    return *stored;
  }
};

FormulaEnumerator::FormulaEnumerator(std::set<Var> free_vars,
                                     std::vector<Parameter> params,
                                     unsigned max_depth, const Limits& limits)
    : impl_(std::make_unique<Impl>(Impl{{},
                                        std::move(free_vars),
                                        {},
                                        max_depth,
                                        Budget(limits.max_nodes),
                                        {},
                                        {},
                                        0,
                                        0,
                                        nullptr,
                                        0})) {
  if (max_depth == 0) throw SemanticError("max_depth must be at least 1");
  if (max_depth > 24) {
    throw ResourceLimitError("max_depth " + std::to_string(max_depth) +
                             " is far beyond any enumerable stream");
  }
  Impl& im = *impl_;
  im.free_list.assign(im.free_set.begin(), im.free_set.end());
  // drop exact duplicate parameters so no formula is emitted twice
  for (Parameter& p : params) {
    bool dup = false;
    for (const Parameter& q : im.params) {
      if (q == p) {
        dup = true;
        break;
      }
    }
    if (!dup) im.params.push_back(std::move(p));
  }
  // canonical bound-variable names z0, z1, ... skipping free variables
  unsigned idx = 0;
  while (im.bound_names.size() < max_depth + 1u) {
    std::string cand = "z" + std::to_string(idx++);
    if (!im.free_set.count(cand)) im.bound_names.push_back(cand);
  }
  im.max_size = (std::size_t{1} << max_depth) - 1;
}

FormulaEnumerator::~FormulaEnumerator() = default;
FormulaEnumerator::FormulaEnumerator(FormulaEnumerator&&) noexcept = default;
FormulaEnumerator& FormulaEnumerator::operator=(FormulaEnumerator&&) noexcept = default;

std::optional<Formula> FormulaEnumerator::next() {
  Impl& im = *impl_;
  while (true) {
    if (im.cur && im.pos < im.cur->size()) return (*im.cur)[im.pos++];
    if (im.cur_size >= im.max_size) return std::nullopt;
    ++im.cur_size;
    im.gen(im.cur_size, im.max_depth, 0);
    im.cur = im.memo.find(Impl::Key{im.cur_size, im.max_depth, 0})->second;
    im.pos = 0;
  }
}

std::vector<Formula> enumerate_formulas(std::set<Var> free_vars,
                                        std::vector<Parameter> params,
                                        unsigned max_depth, const Limits& limits) {
  FormulaEnumerator en(std::move(free_vars), std::move(params), max_depth, limits);
  std::vector<Formula> out;
  while (auto f = en.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace hflab
