#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qtl/error.hpp"

namespace qtl {

/// An indexed proposition symbol p0, p1, ...
struct PropSymbol {
  unsigned index = 0;
  auto operator<=>(const PropSymbol&) const = default;
};

using SymbolSet = std::set<PropSymbol>;

std::string to_string(PropSymbol s);
std::string to_string(const SymbolSet& set);  // "{p0,p1}"

/// Classical propositional formula over indexed symbols. Immutable; nodes are
/// shared, so copies are cheap.
class PropFormula {
 public:
  enum class Kind { Symbol, Not, And, Or, Implies, Iff };

  static PropFormula Sym(PropSymbol s);
  static PropFormula Sym(unsigned index) { return Sym(PropSymbol{index}); }
  static PropFormula Not(PropFormula f);
  static PropFormula And(PropFormula a, PropFormula b);
  static PropFormula Or(PropFormula a, PropFormula b);
  static PropFormula Implies(PropFormula a, PropFormula b);
  static PropFormula Iff(PropFormula a, PropFormula b);

  Kind kind() const;
  PropSymbol symbol() const;  // Kind::Symbol only
  PropFormula operand() const;  // Kind::Not only
  PropFormula left() const;     // binary kinds
  PropFormula right() const;

  /// Var(f): the set of symbols occurring in the formula.
  SymbolSet variables() const;

  std::string to_string() const;

  /// Total structural order; used for canonical component identity.
  int compare(const PropFormula& other) const;
  bool operator==(const PropFormula& o) const { return compare(o) == 0; }
  bool operator<(const PropFormula& o) const { return compare(o) < 0; }

 private:
  struct Node;
  explicit PropFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Left fold of a nonempty formula list with And.
PropFormula conjoin(const std::vector<PropFormula>& fs);

/// A total truth-value assignment on a finite symbol set (its domain).
class TotalAssignment {
 public:
  TotalAssignment() = default;
  explicit TotalAssignment(std::map<PropSymbol, bool> values) : values_(std::move(values)) {}

  /// Convenience builder: {{0, true}, {1, false}} -> {p0:1, p1:0}.
  static TotalAssignment of(std::initializer_list<std::pair<unsigned, bool>> bits);

  const std::map<PropSymbol, bool>& values() const { return values_; }
  SymbolSet domain() const;
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  bool contains(PropSymbol s) const { return values_.count(s) != 0; }
  bool value(PropSymbol s) const;  // DomainError if s outside the domain

  /// Restriction to a subset of the domain. DomainError otherwise.
  TotalAssignment restricted_to(const SymbolSet& u) const;

  auto operator<=>(const TotalAssignment&) const = default;

 private:
  std::map<PropSymbol, bool> values_;
};

std::string to_string(const TotalAssignment& s);  // "{p0:1,p1:0}"

/// Symbol count above which exhaustive truth-table enumeration refuses to run.
inline constexpr std::size_t kMaxEnumerationSymbols = 24;

/// Classical truth value of f under s. Requires Var(f) within the domain of s.
bool eval(const PropFormula& f, const TotalAssignment& s);

/// The conjunction of literals fixing exactly the assignment s; positive
/// literal where s(v) = 1. DomainError on an empty domain.
PropFormula minterm(const TotalAssignment& s);

/// All assignments on `symbols` in canonical order: all-ones first, then
/// descending as binary strings with the smallest symbol index most
/// significant. ResourceError beyond kMaxEnumerationSymbols.
std::vector<TotalAssignment> all_assignments(const SymbolSet& symbols);

/// True iff no assignment over Var(f) satisfies f (exhaustive check).
bool is_contradictory(const PropFormula& f);

/// True iff f and g agree on every assignment over Var(f) united with Var(g).
bool prop_equiv(const PropFormula& f, const PropFormula& g);

}  // namespace qtl
