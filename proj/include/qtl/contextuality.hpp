#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtl/logic.hpp"
#include "qtl/team.hpp"

namespace qtl {

/// Base-set size above which the global-section search refuses to run
/// (it works over all 2^|B| full assignments).
inline constexpr std::size_t kMaxGlobalSectionSymbols = 16;

/// The logical Bell inequality for jointly contradictory formulas: the normal
/// formula sum(f_j) <= k-1. DomainError unless the conjunction of the f_j is
/// contradictory. With `general` set, the unconditional form
/// sum(f_j) - [conj f_j] <= k-1 is returned instead and no contradiction
/// check is made.
QtlFormula derive_bell(const std::vector<PropFormula>& formulas, bool general = false);

/// How far the table's expectations exceed the Bell bound:
/// max(0, sum E[f_j] - (k-1)). Each E[f_j] is read off a cover set containing
/// Var(f_j); if several contain it, their induced marginals must agree.
Rational violation(const ProbabilityTable& table, const std::vector<PropFormula>& formulas);

/// A distribution on full assignments over the base set whose marginal to
/// every context equals that context's distribution, when one exists.
std::optional<std::map<TotalAssignment, Rational>> global_section(const ProbabilityTable& table);

bool has_global_section(const ProbabilityTable& table);

/// No full assignment is consistent with the supports of all contexts: for
/// every s over the base there is a context U with d_U(s|U) = 0.
bool is_strongly_contextual(const ProbabilityTable& table);

enum class TableClass { NonContextual, Contextual, StronglyContextual };
std::string to_string(TableClass c);

/// Non-contextual iff a global section exists; otherwise strongly contextual
/// iff no full assignment is possibilistically consistent; contextual else.
TableClass classify(const ProbabilityTable& table);

}  // namespace qtl
