#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "qtl/logic.hpp"
#include "qtl/team.hpp"

namespace qtl {

/// Search caps. The procedure is inherently exponential; these keep it total
/// and fail fast with ResourceError above desk scale.
struct DecideLimits {
  std::size_t max_supports = 10;
  std::size_t max_atoms = 128;          // distinct atoms of the augmented formula
  std::size_t max_variables = 64;       // distinct elementary components
  std::size_t max_conjuncts = 1 << 16;  // conjuncts materialized by the closure
};

struct SearchStats {
  std::uint64_t assignments_tried = 0;  // sign assignments reaching a feasibility check
  std::uint64_t fm_eliminations = 0;    // variables eliminated across all checks
};

/// The support-monotonicity axiom closure over a support family: for every
/// pair V within V' and every assignment s on V, extremal expectations
/// propagate upward: ((phi_s = 0; V) -> (phi_s = 0; V')) and the = 1 mirror.
/// Pairs with V = V' are included (they are tautological implications); the
/// satisfiability search prunes them.
QtlFormula build_beta(const std::set<SymbolSet>& supports, const DecideLimits& limits = {});

/// The distribution scaffolding for a formula: per support V, the assignment
/// expectations form a distribution (sum to 1, each nonnegative); per
/// elementary component (f; V), its expectation equals the sum of the
/// expectations of the assignments on V satisfying f.
QtlFormula build_gamma(const QtlFormula& alpha, const DecideLimits& limits = {});

/// Complete satisfiability check: returns a team satisfying alpha (verified
/// against the independent evaluator before being returned), or nullopt when
/// no quantum team satisfies alpha.
std::optional<QuantumTeam> qtl_satisfiable(const QtlFormula& alpha,
                                           const DecideLimits& limits = {},
                                           SearchStats* stats = nullptr);

/// Valid iff the negation is unsatisfiable over the same support family.
bool qtl_valid(const QtlFormula& alpha, const DecideLimits& limits = {},
               SearchStats* stats = nullptr);

/// Multi-team satisfiability: widens every support to the union of the
/// formula's symbols and decides over the single widened support. Any witness
/// is a multi-team.
std::optional<QuantumTeam> ptl_satisfiable(const QtlFormula& alpha,
                                           const DecideLimits& limits = {},
                                           SearchStats* stats = nullptr);
bool ptl_valid(const QtlFormula& alpha, const DecideLimits& limits = {},
               SearchStats* stats = nullptr);

/// Builds a quantum team realizing exact expectation values per component.
/// `values` must assign a value to every assignment-component (minterm(s); V)
/// for each support V and each s on V, forming a distribution per support,
/// and must respect upward propagation of extremal values (as enforced by
/// build_beta on any feasible witness). Exposed for tests; the satisfiability
/// search calls it with Fourier-Motzkin witnesses.
QuantumTeam synthesize_team(const std::map<Component, Rational>& values,
                            const std::set<SymbolSet>& supports);

enum class Verdict { Valid, SatisfiableNotValid, Unsatisfiable };
std::string to_string(Verdict v);

enum class LogicMode { Qtl, Ptl };

struct DecisionResult {
  Verdict verdict;
  std::optional<QuantumTeam> witness;         // satisfies alpha
  std::optional<QuantumTeam> counterexample;  // satisfies !alpha
  SearchStats stats;
};

/// Satisfiability of alpha and of its negation, combined into a verdict.
DecisionResult decide(const QtlFormula& alpha, LogicMode mode, const DecideLimits& limits = {});

}  // namespace qtl
