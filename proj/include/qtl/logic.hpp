#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtl/rational.hpp"
#include "qtl/team.hpp"

namespace qtl {

/// An elementary component (f; V): a propositional formula paired with a
/// support set V containing Var(f). The support names the measurement context
/// the formula's expectation is taken in.
class Component {
 public:
  Component(PropFormula formula, SymbolSet support);

  /// Normal form: support = Var(formula).
  static Component normal(PropFormula formula);

  const PropFormula& formula() const { return formula_; }
  const SymbolSet& support() const { return support_; }
  bool is_normal() const { return formula_.variables() == support_; }

  int compare(const Component& o) const;
  bool operator==(const Component& o) const { return compare(o) == 0; }
  bool operator<(const Component& o) const { return compare(o) < 0; }

  std::string to_string() const;  // "[f; {p0,p1}]"

 private:
  PropFormula formula_;
  SymbolSet support_;
};

/// A linear atom sum(a_j * (f_j; V_j)) >= c with integer coefficients and
/// bound. Terms are kept canonical: sorted by component, merged, nonzero.
class LinAtom {
 public:
  using Term = std::pair<BigInt, Component>;

  /// Builds the >=-atom, canonicalizing terms. DomainError if every
  /// coefficient cancels.
  static LinAtom geq(std::vector<Term> terms, BigInt bound);

  const std::vector<Term>& terms() const { return terms_; }
  const BigInt& bound() const { return bound_; }

  int compare(const LinAtom& o) const;
  bool operator==(const LinAtom& o) const { return compare(o) == 0; }
  bool operator<(const LinAtom& o) const { return compare(o) < 0; }

  std::string to_string() const;

 private:
  LinAtom(std::vector<Term> terms, BigInt bound)
      : terms_(std::move(terms)), bound_(std::move(bound)) {}
  std::vector<Term> terms_;
  BigInt bound_;
};

/// A QTL (or PTL) formula: a boolean combination of linear atoms. Only
/// negation and conjunction are primitive; the other connectives and the
/// comparators <=, <, >, = are desugared at construction. True is the empty
/// conjunction.
class QtlFormula {
 public:
  enum class Kind { True, Atom, Not, And };

  static QtlFormula True();
  static QtlFormula Atom(LinAtom atom);
  static QtlFormula Not(QtlFormula f);
  static QtlFormula And(QtlFormula a, QtlFormula b);
  static QtlFormula Or(QtlFormula a, QtlFormula b);       // !( !a & !b )
  static QtlFormula Implies(QtlFormula a, QtlFormula b);  // !( a & !b )

  /// Left fold with And; an empty list yields True.
  static QtlFormula and_all(const std::vector<QtlFormula>& fs);

  Kind kind() const;
  const LinAtom& atom() const;  // Kind::Atom only
  QtlFormula operand() const;   // Kind::Not only
  QtlFormula left() const;      // Kind::And only
  QtlFormula right() const;

  int compare(const QtlFormula& o) const;
  bool operator==(const QtlFormula& o) const { return compare(o) == 0; }

  std::string to_string() const;

 private:
  struct Node;
  explicit QtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// EC(f): the set of elementary components, collected through negation and
/// conjunction.
std::set<Component> elementary_components(const QtlFormula& f);

/// Sp(f): the set of component supports.
std::set<SymbolSet> support(const QtlFormula& f);

/// All component supports coincide.
bool is_classical(const QtlFormula& f);

/// Every component is in normal form.
bool is_normal(const QtlFormula& f);

/// Exact value of the atom's linear form on the team: sum of
/// a_j * expectation(team, V_j, f_j).
Rational atom_value(const QuantumTeam& team, const LinAtom& atom);

/// Quantum-team satisfaction. SupportError unless Sp(f) is dominated by the
/// team support.
bool satisfies(const QuantumTeam& team, const QtlFormula& f);

/// Multi-team satisfaction: every expectation is taken over the whole team
/// (equivalently, every support is widened to the team domain).
/// NotMultiTeamError when row domains differ; DomainError if the formula
/// mentions symbols outside the team domain.
bool ptl_satisfies(const QuantumTeam& team, const QtlFormula& f);

/// Widens every component support to the union of all supports and variables
/// in f, producing the classical formula PTL semantics evaluates.
QtlFormula classicalize(const QtlFormula& f);

}  // namespace qtl
