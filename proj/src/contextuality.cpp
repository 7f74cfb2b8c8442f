#include "qtl/contextuality.hpp"

#include <algorithm>

#include "qtl/error.hpp"
#include "qtl/lin.hpp"

namespace qtl {

QtlFormula derive_bell(const std::vector<PropFormula>& formulas, bool general) {
  if (formulas.empty()) throw DomainError("no formulas to derive an inequality from");
  std::vector<LinAtom::Term> terms;
  for (const PropFormula& f : formulas) terms.emplace_back(-1, Component::normal(f));
  BigInt k(formulas.size());
  if (general) {
    terms.emplace_back(1, Component::normal(conjoin(formulas)));
  } else if (!is_contradictory(conjoin(formulas))) {
    throw DomainError(
        "the conjunction of the formulas is satisfiable; the bound sum <= k-1 "
        "requires joint contradiction (use the general form instead)");
  }
  // sum(f_j) - extra <= k-1, encoded as the >=-atom of the negated sum.
  return QtlFormula::Atom(LinAtom::geq(std::move(terms), -(k - 1)));
}

namespace {

// E_T[f] read off a context containing Var(f); all qualifying contexts must
// induce the same value.
Rational table_expectation(const ProbabilityTable& table, const PropFormula& f) {
  SymbolSet vars = f.variables();
  std::optional<Rational> value;
  for (std::size_t i = 0; i < table.contexts(); ++i) {
    const SymbolSet& u = table.context_symbols(i);
    if (!std::includes(u.begin(), u.end(), vars.begin(), vars.end())) continue;
    Rational e = 0;
    for (const auto& [v, p] : table.distribution(i))
      if (eval(f, v)) e += p;
    if (value && *value != e)
      throw CoverError("contexts containing " + to_string(vars) +
                       " disagree on the marginal of " + f.to_string());
    value = e;
  }
  if (!value)
    throw CoverError("no context contains the variables " + to_string(vars) + " of " +
                     f.to_string());
  return *value;
}

}  // namespace

Rational violation(const ProbabilityTable& table, const std::vector<PropFormula>& formulas) {
  if (formulas.empty()) throw DomainError("no formulas to evaluate");
  if (!is_contradictory(conjoin(formulas)))
    throw DomainError("violation is measured against jointly contradictory formulas");
  Rational sum = 0;
  for (const PropFormula& f : formulas) sum += table_expectation(table, f);
  Rational excess = sum - Rational(BigInt(formulas.size()) - 1);
  return excess > 0 ? excess : Rational(0);
}

std::optional<std::map<TotalAssignment, Rational>> global_section(const ProbabilityTable& table) {
  const SymbolSet& base = table.cover().base();
  if (base.size() > kMaxGlobalSectionSymbols)
    throw ResourceError("global-section search over " + std::to_string(base.size()) +
                        " symbols exceeds the cap of " +
                        std::to_string(kMaxGlobalSectionSymbols));
  std::vector<TotalAssignment> full = all_assignments(base);
  std::map<TotalAssignment, lin::VarId> ids;
  for (std::size_t i = 0; i < full.size(); ++i) ids.emplace(full[i], i);

  lin::LinSystem system(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) system.add_ge({{i, Rational(1)}}, 0);
  // One marginal equality per context and per assignment on that context.
  for (std::size_t ctx = 0; ctx < table.contexts(); ++ctx) {
    const SymbolSet& u = table.context_symbols(ctx);
    for (const TotalAssignment& v : all_assignments(u)) {
      std::map<lin::VarId, Rational> coeffs;
      for (std::size_t i = 0; i < full.size(); ++i)
        if (full[i].restricted_to(u) == v) coeffs.emplace(i, Rational(1));
      system.add_eq(std::move(coeffs), table.probability(ctx, v));
    }
  }
  std::optional<std::vector<Rational>> witness = system.feasible();
  if (!witness) return std::nullopt;
  std::map<TotalAssignment, Rational> section;
  for (std::size_t i = 0; i < full.size(); ++i)
    if ((*witness)[i] != 0) section.emplace(full[i], (*witness)[i]);
  return section;
}

bool has_global_section(const ProbabilityTable& table) {
  return global_section(table).has_value();
}

bool is_strongly_contextual(const ProbabilityTable& table) {
  const SymbolSet& base = table.cover().base();
  if (base.size() > kMaxGlobalSectionSymbols)
    throw ResourceError("possibilistic scan over " + std::to_string(base.size()) +
                        " symbols exceeds the cap of " +
                        std::to_string(kMaxGlobalSectionSymbols));
  for (const TotalAssignment& s : all_assignments(base)) {
    bool consistent = true;
    for (std::size_t ctx = 0; ctx < table.contexts() && consistent; ++ctx)
      if (table.probability(ctx, s.restricted_to(table.context_symbols(ctx))) == 0)
        consistent = false;
    if (consistent) return false;
  }
  return true;
}

std::string to_string(TableClass c) {
  switch (c) {
    case TableClass::NonContextual: return "non-contextual";
    case TableClass::Contextual: return "contextual";
    case TableClass::StronglyContextual: return "strongly-contextual";
  }
  throw InternalError("to_string: unknown table class");
}

TableClass classify(const ProbabilityTable& table) {
  if (has_global_section(table)) return TableClass::NonContextual;
  return is_strongly_contextual(table) ? TableClass::StronglyContextual : TableClass::Contextual;
}

}  // namespace qtl
