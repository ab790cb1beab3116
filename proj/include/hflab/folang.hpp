#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hflab/hfset.hpp"
#include "hflab/limits.hpp"

namespace hflab {

using Var = std::string;

/// A constant embedded in a formula: either a concrete ground set, or a
/// reference to a forcing name ("#G") that the forcing machinery resolves
/// before evaluation.
class Parameter {
 public:
  static Parameter ground(HfSet s) { return Parameter(std::move(s)); }
  static Parameter name_ref(std::string id) { return Parameter(Tag{}, std::move(id)); }

  bool is_ground() const { return std::holds_alternative<HfSet>(v_); }
  const HfSet& set() const { return std::get<HfSet>(v_); }
  const std::string& name_id() const { return std::get<std::string>(v_); }

  bool operator==(const Parameter& o) const { return v_ == o.v_; }

  /// "{...}" for ground sets, "#id" for name references.
  std::string to_text() const;

 private:
  struct Tag {};
  explicit Parameter(HfSet s) : v_(std::move(s)) {}
  Parameter(Tag, std::string id) : v_(std::move(id)) {}
  std::variant<HfSet, std::string> v_;
};

class Term {
 public:
  static Term var(Var v) { return Term(std::variant<Var, Parameter>(std::in_place_index<0>, std::move(v))); }
  static Term param(Parameter p) { return Term(std::variant<Var, Parameter>(std::in_place_index<1>, std::move(p))); }

  bool is_var() const { return v_.index() == 0; }
  const Var& var_name() const { return std::get<0>(v_); }
  const Parameter& parameter() const { return std::get<1>(v_); }

  bool operator==(const Term& o) const { return v_ == o.v_; }

  std::string to_text() const;

 private:
  explicit Term(std::variant<Var, Parameter> v) : v_(std::move(v)) {}
  std::variant<Var, Parameter> v_;
};

/// Immutable formula over the language of membership and equality.
/// Structure is shared; copies are cheap handle copies.
///
/// depth: 1 for an atom, 1 + subformula depth otherwise.
/// size: number of atoms, connectives and quantifiers.
class Formula {
 public:
  enum class Kind { Membership, Equality, Not, And, Or, Implies, Exists, ForAll };

  static Formula membership(Term l, Term r);
  static Formula equality(Term l, Term r);
  static Formula negation(Formula f);
  static Formula conjunction(Formula l, Formula r);
  static Formula disjunction(Formula l, Formula r);
  static Formula implication(Formula l, Formula r);
  static Formula exists(Var v, Formula body);
  static Formula forall(Var v, Formula body);

  Kind kind() const;
  bool is_atom() const;
  const Term& lhs() const;           // atoms only
  const Term& rhs() const;           // atoms only
  const Formula& left() const;       // And/Or/Implies
  const Formula& right() const;      // And/Or/Implies
  const Formula& body() const;       // Not/Exists/ForAll
  const Var& bound_var() const;      // Exists/ForAll

  unsigned depth() const;
  std::size_t size() const;

  std::set<Var> free_vars() const;
  bool is_closed() const { return free_vars().empty(); }

  /// All "#id" references occurring anywhere in the formula.
  std::set<std::string> name_refs() const;
  bool mentions_name(const std::string& id) const;

  /// Canonical concrete syntax.  parse_formula(to_text()) reconstructs an
  /// identical tree for every formula.
  std::string to_text() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite structure for the language: a finite sequence of distinct sets,
/// kept in canonical order.  Atoms are evaluated by genuine membership and
/// equality; quantifiers range over the domain.
class FiniteModel {
 public:
  FiniteModel() = default;
  explicit FiniteModel(std::vector<HfSet> domain);

  std::span<const HfSet> domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  bool contains(const HfSet& x) const;

  /// The domain collected into a single set.
  HfSet as_set() const;

  bool operator==(const FiniteModel& o) const { return domain_ == o.domain_; }

 private:
  std::vector<HfSet> domain_;
};

using Assignment = std::map<Var, HfSet>;

/// Quantifier witness / counterexample log, filled when requested.
struct EvalTrace {
  std::vector<std::string> lines;
};

/// Parses the concrete syntax:
///
///   formula := imp
///   imp     := or ("->" imp)?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | ("E"|"A") var "." formula | atom
///   atom    := term ("in"|"=") term | "(" formula ")"
///   term    := var | setliteral | "#" identifier
///
/// Quantifiers scope as far right as possible (the dot notation).  Unicode
/// aliases are accepted: ∈ ¬ ∧ ∨ → ∃ ∀.  Set literals use braces,
/// decimal numerals (von Neumann) and Kuratowski pairs "<a,b>", and must be
/// ground.  Throws ParseError with a byte offset.
Formula parse_formula(std::string_view text);

/// Tarskian satisfaction.  Unassigned free variables and unresolved name
/// references raise SemanticError.
bool eval(const FiniteModel& m, const Formula& f, const Assignment& assignment,
          EvalTrace* trace = nullptr);

/// Replaces every free occurrence of v by the parameter p.  SemanticError
/// when v is not free in f.
Formula substitute(const Formula& f, const Var& v, const Parameter& p);

/// Streams every formula with depth <= max_depth whose free variables are
/// drawn from free_vars and whose parameters are drawn from params, without
/// duplicates, in a fixed total order: size first, then a lexicographic
/// order (kind, operands).  Bound variables are named canonically from the
/// scope depth, so alpha-variants are never emitted twice.
class FormulaEnumerator {
 public:
  FormulaEnumerator(std::set<Var> free_vars, std::vector<Parameter> params,
                    unsigned max_depth, const Limits& limits = Limits::defaults());
  ~FormulaEnumerator();
  FormulaEnumerator(FormulaEnumerator&&) noexcept;
  FormulaEnumerator& operator=(FormulaEnumerator&&) noexcept;

  /// Next formula, or nullopt when the (finite) stream is exhausted.
  /// Throws ResourceLimitError when the node budget runs out.
  std::optional<Formula> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Collects the whole stream.
std::vector<Formula> enumerate_formulas(std::set<Var> free_vars,
                                        std::vector<Parameter> params,
                                        unsigned max_depth,
                                        const Limits& limits = Limits::defaults());

}  // namespace hflab
