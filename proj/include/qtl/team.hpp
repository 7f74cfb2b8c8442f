#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qtl/prop.hpp"
#include "qtl/rational.hpp"

namespace qtl {

/// A finite indexed family of partial truth assignments. Row i is a total
/// assignment on its own domain Q_i; symbols outside Q_i are indeterminate in
/// that row. A multi-team is the special case where all Q_i coincide. Rows are
/// an ordered list and repetitions are meaningful: they induce the empirical
/// probabilities below.
class QuantumTeam {
 public:
  QuantumTeam() = default;
  explicit QuantumTeam(std::vector<TotalAssignment> rows);

  const std::vector<TotalAssignment>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Union of all row domains.
  SymbolSet domain() const;

  /// Sp(X): the set of row domains.
  std::set<SymbolSet> support() const;

  bool is_multi_team() const;

  /// Indices of rows whose domain contains u. May be empty.
  std::vector<std::size_t> omega(const SymbolSet& u) const;

  /// The multi-team of row restrictions to u, over rows whose domain
  /// contains u. RestrictionError when no row qualifies.
  QuantumTeam restricted_to(const SymbolSet& u) const;

  /// Empirical probability that a row defined on u restricts exactly to v.
  /// Requires domain(v) == u and at least one row defined on u.
  Rational probability(const SymbolSet& u, const TotalAssignment& v) const;

  /// Expected truth value of f among the rows defined on u. Requires
  /// Var(f) within u and at least one row defined on u.
  Rational expectation(const SymbolSet& u, const PropFormula& f) const;

  /// Expectation with the default context u = Var(f).
  Rational expectation(const PropFormula& f) const;

  bool operator==(const QuantumTeam& o) const { return rows_ == o.rows_; }

 private:
  std::vector<TotalAssignment> rows_;
};

/// A finite family of symbol sets whose union is the base set. The family is
/// ordered and may repeat a member set; probability-table contexts are keyed
/// by position, not by set identity.
class Cover {
 public:
  explicit Cover(std::vector<SymbolSet> sets);
  Cover(std::vector<SymbolSet> sets, SymbolSet base);

  const std::vector<SymbolSet>& sets() const { return sets_; }
  const SymbolSet& base() const { return base_; }
  std::size_t size() const { return sets_.size(); }

  bool operator==(const Cover& o) const { return sets_ == o.sets_ && base_ == o.base_; }

 private:
  std::vector<SymbolSet> sets_;
  SymbolSet base_;
};

/// The cover order: every member of `a` is contained in some member of `b`.
bool cover_leq(const std::vector<SymbolSet>& a, const std::vector<SymbolSet>& b);
bool cover_leq(const std::vector<SymbolSet>& a, const std::set<SymbolSet>& b);
bool cover_leq(const std::set<SymbolSet>& a, const std::set<SymbolSet>& b);

/// One exact rational distribution per cover set: the empirical record of an
/// experiment with limited measurement contexts. Distributions are stored
/// sparsely; assignments carrying probability zero are dropped on
/// construction, so equality is equality as functions.
class ProbabilityTable {
 public:
  ProbabilityTable(Cover cover, std::vector<std::map<TotalAssignment, Rational>> distributions);

  const Cover& cover() const { return cover_; }
  std::size_t contexts() const { return cover_.size(); }
  const SymbolSet& context_symbols(std::size_t i) const { return cover_.sets()[i]; }
  const std::map<TotalAssignment, Rational>& distribution(std::size_t i) const;

  /// d_U(v) with U the i-th context; zero for assignments not stored.
  Rational probability(std::size_t i, const TotalAssignment& v) const;

  bool operator==(const ProbabilityTable& o) const;

 private:
  Cover cover_;
  std::vector<std::map<TotalAssignment, Rational>> dists_;
};

/// The probability table recording, for each cover set U, the distribution of
/// row restrictions to U. CoverError unless every U is contained in some row
/// domain.
ProbabilityTable associated_table(const QuantumTeam& team, const Cover& cover);

/// A canonical quantum team whose associated table equals `table` exactly:
/// one block of rows per context, sized by the least common denominator of
/// that context's probabilities. Contexts listing the same symbol set twice
/// yield separate blocks, which pool when re-associated; exact round-tripping
/// therefore needs pairwise distinct cover sets.
QuantumTeam team_from_table(const ProbabilityTable& table);

// Text formats. Writers are canonical (parse . format == identity, and
// format . parse is byte-identical on canonical input).
//
// Team: header line of symbol names, one row per line, `0`/`1`/`-` per
// column, `-` marking a symbol outside the row's domain.
//
// Table: per context a header `U: <symbols>` followed by one line per
// assignment, `<bits> <rational>`, bits ordered like the header.
std::string format_team(const QuantumTeam& team);
QuantumTeam parse_team(std::string_view text);
std::string format_table(const ProbabilityTable& table);
ProbabilityTable parse_table(std::string_view text);

/// Cover spec `{p0,p1};{p0,p3}`; whitespace-insensitive.
Cover parse_cover(std::string_view text);
std::string format_cover(const Cover& cover);

}  // namespace qtl
