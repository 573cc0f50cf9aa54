#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sacks {

// ---------------------------------------------------------------------------
// Hereditarily finite sets

/// Ackermann code: bit i is set iff the set coded by i is a member.
using SetCode = std::uint64_t;

/// x is a member of y.
bool code_member(SetCode x, SetCode y);

/// Throws Resource when an element code is 64 or more.
SetCode code_of(std::span<const SetCode> elements);

std::vector<SetCode> code_elements(SetCode x);

/// "{}", "{{}}", "{{},{{}}}".
std::string code_to_string(SetCode x);

/// A finite universe with membership read off the codes.
class FinStructure {
 public:
  FinStructure() = default;
  /// Sorts and drops duplicates.
  explicit FinStructure(std::vector<SetCode> universe);

  const std::vector<SetCode>& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return universe_.size(); }
  std::optional<std::size_t> index_of(SetCode x) const;
  bool member(std::size_t i, std::size_t j) const { return code_member(universe_[i], universe_[j]); }

  /// Every member of a universe element is itself in the universe.
  bool is_transitive() const;

 private:
  std::vector<SetCode> universe_;
};

/// A subset of a structure: bit i stands for universe()[i].
using Subset = std::uint64_t;

/// Code of the subset as a set. Throws Resource when it does not fit.
SetCode subset_code(const FinStructure& x, Subset s);

// ---------------------------------------------------------------------------
// Formulas

struct Term {
  bool is_param = false;
  std::string var;
  std::size_t param = 0;

  static Term variable(std::string name) { return Term{false, std::move(name), 0}; }
  static Term parameter(std::size_t k) { return Term{true, {}, k}; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Formula {
  enum class Op { In, Eq, Pred, Not, And, Or, Implies, Iff, Forall, Exists };

  Op op = Op::Pred;
  std::vector<Term> terms;     // atoms
  std::string var;             // quantifiers
  std::vector<Formula> kids;   // connectives and quantifiers

  static Formula in(Term a, Term b) { return Formula{Op::In, {std::move(a), std::move(b)}, {}, {}}; }
  static Formula eq(Term a, Term b) { return Formula{Op::Eq, {std::move(a), std::move(b)}, {}, {}}; }
  static Formula pred(Term a) { return Formula{Op::Pred, {std::move(a)}, {}, {}}; }
  static Formula negation(Formula f) { return Formula{Op::Not, {}, {}, {std::move(f)}}; }
  static Formula binary(Op op, Formula a, Formula b) { return Formula{op, {}, {}, {std::move(a), std::move(b)}}; }
  static Formula quantifier(Op op, std::string v, Formula body) {
    return Formula{op, {}, std::move(v), {std::move(body)}};
  }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Grammar, loosest binding first:
///   formula := imp ("<->" imp)*
///   imp     := or ("->" imp)?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | ("all" | "ex") ident "." formula | "(" formula ")"
///            | "S" "(" term ")" | term ("in" | "=") term
///   term    := ident | "#" digits
/// Throws SyntaxError carrying the byte offset.
Formula parse_formula(std::string_view text);

std::string to_string(const Formula& f);

/// AST node count: atoms and their terms, connectives, quantifiers.
std::size_t formula_size(const Formula& f);

/// One more than the largest parameter index, 0 without parameters.
std::size_t param_slots_used(const Formula& f);

/// Satisfaction in (X, in, S). Throws Domain when a parameter is outside the
/// universe, a parameter slot is missing or a variable is free.
bool eval_formula(const Formula& f, const FinStructure& x, Subset s, std::span<const SetCode> params);

/// The unique subset satisfying f, if exactly one does.
std::optional<Subset> implicitly_defined_by(const FinStructure& x, const Formula& f,
                                            std::span<const SetCode> params);

// ---------------------------------------------------------------------------
// Bounded search

struct ImpBounds {
  std::size_t budget = 0;
  std::size_t param_slots = 2;  // parameters #0.. #(param_slots-1)
  std::size_t var_slots = 2;    // bound variable names available
};

struct ImpWitness {
  Formula formula;
  std::vector<SetCode> params;
};

/// Every subset implicitly defined by a formula of at most `budget` nodes
/// over the given variable and parameter slots, with a smallest witness
/// each. Throws Resource when the universe has more than 8 elements.
std::map<Subset, ImpWitness> implicit_witnesses(const FinStructure& x, const ImpBounds& bounds);

std::set<Subset> implicit_subsets(const FinStructure& x, const ImpBounds& bounds);

using SetFamily = std::set<SetCode>;

/// Levels 0..n. Throws Resource naming the level whose universe is too large.
std::vector<SetFamily> imp_levels(std::size_t n, const ImpBounds& bounds);

/// V_0..V_n. Throws Resource for n > 4.
std::vector<SetFamily> vn_levels(std::size_t n);

}  // namespace sacks
