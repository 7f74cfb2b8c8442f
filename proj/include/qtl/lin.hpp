#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtl/rational.hpp"

namespace qtl::lin {

using VarId = std::size_t;

enum class Rel { Ge, Gt };

/// sum(coeffs[x] * x) rel bound, exact rationals throughout. (<=, <, =) are
/// expressed via negation / constraint pairs at the LinSystem level.
struct LinConstraint {
  std::map<VarId, Rational> coeffs;  // nonzero entries only
  Rel rel = Rel::Ge;
  Rational bound = 0;

  bool satisfied_by(const std::vector<Rational>& values) const;
  std::string to_string() const;  // debug dump, one line
};

/// The complement: not(sum >= c) is sum(-a) > -c; not(sum > c) is
/// sum(-a) >= -c.
LinConstraint negate(const LinConstraint& c);

struct FeasibleStats {
  std::uint64_t eliminations = 0;  // variables eliminated (substitution or FM)
};

/// A conjunction of linear constraints over variables 0..num_vars-1.
class LinSystem {
 public:
  explicit LinSystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<LinConstraint>& constraints() const { return cons_; }

  void add(LinConstraint c);
  void add_ge(std::map<VarId, Rational> coeffs, Rational bound);
  void add_gt(std::map<VarId, Rational> coeffs, Rational bound);
  void add_le(std::map<VarId, Rational> coeffs, Rational bound);
  void add_lt(std::map<VarId, Rational> coeffs, Rational bound);
  void add_eq(std::map<VarId, Rational> coeffs, Rational bound);  // two constraints

  /// Decides feasibility over the reals by Fourier-Motzkin elimination with
  /// exact rational arithmetic (complementary constraint pairs are first
  /// eliminated by substitution). Returns a rational witness, or nullopt when
  /// the system has no real solution. Every returned witness is re-checked
  /// against all constraints before being returned.
  std::optional<std::vector<Rational>> feasible(FeasibleStats* stats = nullptr) const;

  std::string to_string() const;

 private:
  std::size_t num_vars_;
  std::vector<LinConstraint> cons_;
};

/// The rational with the smallest denominator (then smallest magnitude)
/// within the given interval; absent bounds mean unbounded. Requires a
/// nonempty interval.
Rational simplest_rational(const std::optional<Rational>& lo, bool lo_strict,
                           const std::optional<Rational>& hi, bool hi_strict);

}  // namespace qtl::lin
