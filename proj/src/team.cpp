#include "qtl/team.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qtl/error.hpp"

namespace qtl {

QuantumTeam::QuantumTeam(std::vector<TotalAssignment> rows) : rows_(std::move(rows)) {
  for (const TotalAssignment& row : rows_)
    if (row.empty()) throw DomainError("team row with empty domain");
}

SymbolSet QuantumTeam::domain() const {
  SymbolSet out;
  for (const TotalAssignment& row : rows_)
    for (const auto& [sym, bit] : row.values()) out.insert(sym);
  return out;
}

std::set<SymbolSet> QuantumTeam::support() const {
  std::set<SymbolSet> out;
  for (const TotalAssignment& row : rows_) out.insert(row.domain());
  return out;
}

bool QuantumTeam::is_multi_team() const {
  if (rows_.empty()) return true;
  SymbolSet first = rows_.front().domain();
  for (const TotalAssignment& row : rows_)
    if (row.domain() != first) return false;
  return true;
}

namespace {

bool row_defined_on(const TotalAssignment& row, const SymbolSet& u) {
  for (PropSymbol s : u)
    if (!row.contains(s)) return false;
  return true;
}

}  // namespace

std::vector<std::size_t> QuantumTeam::omega(const SymbolSet& u) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (row_defined_on(rows_[i], u)) out.push_back(i);
  return out;
}

QuantumTeam QuantumTeam::restricted_to(const SymbolSet& u) const {
  std::vector<std::size_t> idx = omega(u);
  if (idx.empty())
    throw RestrictionError("no row is defined on " + to_string(u));
  std::vector<TotalAssignment> rows;
  rows.reserve(idx.size());
  for (std::size_t i : idx) rows.push_back(rows_[i].restricted_to(u));
  return QuantumTeam(std::move(rows));
}

Rational QuantumTeam::probability(const SymbolSet& u, const TotalAssignment& v) const {
  if (v.domain() != u)
    throw DomainError("assignment domain differs from the requested context " + to_string(u));
  std::vector<std::size_t> idx = omega(u);
  if (idx.empty())
    throw RestrictionError("no row is defined on " + to_string(u));
  std::size_t hits = 0;
  for (std::size_t i : idx)
    if (rows_[i].restricted_to(u) == v) ++hits;
  return Rational(BigInt(hits), BigInt(idx.size()));
}

Rational QuantumTeam::expectation(const SymbolSet& u, const PropFormula& f) const {
  SymbolSet vars = f.variables();
  if (!std::includes(u.begin(), u.end(), vars.begin(), vars.end()))
    throw DomainError("formula variables " + to_string(vars) + " not within context " +
                      to_string(u));
  std::vector<std::size_t> idx = omega(u);
  if (idx.empty())
    throw RestrictionError("no row is defined on " + to_string(u));
  std::size_t hits = 0;
  for (std::size_t i : idx)
    if (eval(f, rows_[i])) ++hits;
  return Rational(BigInt(hits), BigInt(idx.size()));
}

Rational QuantumTeam::expectation(const PropFormula& f) const {
  return expectation(f.variables(), f);
}

Cover::Cover(std::vector<SymbolSet> sets) : sets_(std::move(sets)) {
  for (const SymbolSet& u : sets_) {
    if (u.empty()) throw CoverError("cover with an empty member set");
    base_.insert(u.begin(), u.end());
  }
  if (sets_.empty()) throw CoverError("empty cover");
}

Cover::Cover(std::vector<SymbolSet> sets, SymbolSet base) : Cover(std::move(sets)) {
  if (base_ != base)
    throw CoverError("cover union " + to_string(base_) + " differs from declared base " +
                     to_string(base));
}

namespace {

template <typename A, typename B>
bool cover_leq_impl(const A& a, const B& b) {
  for (const SymbolSet& u : a) {
    bool dominated = false;
    for (const SymbolSet& v : b) {
      if (std::includes(v.begin(), v.end(), u.begin(), u.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

}  // namespace

bool cover_leq(const std::vector<SymbolSet>& a, const std::vector<SymbolSet>& b) {
  return cover_leq_impl(a, b);
}
bool cover_leq(const std::vector<SymbolSet>& a, const std::set<SymbolSet>& b) {
  return cover_leq_impl(a, b);
}
bool cover_leq(const std::set<SymbolSet>& a, const std::set<SymbolSet>& b) {
  return cover_leq_impl(a, b);
}

ProbabilityTable::ProbabilityTable(Cover cover,
                                   std::vector<std::map<TotalAssignment, Rational>> distributions)
    : cover_(std::move(cover)), dists_(std::move(distributions)) {
  if (dists_.size() != cover_.size())
    throw TableError("table has " + std::to_string(dists_.size()) + " distributions for " +
                     std::to_string(cover_.size()) + " cover sets");
  for (std::size_t i = 0; i < dists_.size(); ++i) {
    const SymbolSet& u = cover_.sets()[i];
    Rational total = 0;
    for (auto it = dists_[i].begin(); it != dists_[i].end();) {
      const auto& [v, p] = *it;
      if (v.domain() != u)
        throw TableError("assignment " + to_string(v) + " does not match context " + to_string(u));
      if (p < 0 || p > 1)
        throw TableError("probability " + to_string(p) + " outside [0,1]");
      total += p;
      if (p == 0)
        it = dists_[i].erase(it);
      else
        ++it;
    }
    if (total != 1)
      throw TableError("context " + to_string(u) + " sums to " + to_string(total) +
                       ", expected 1");
  }
}

const std::map<TotalAssignment, Rational>& ProbabilityTable::distribution(std::size_t i) const {
  if (i >= dists_.size()) throw TableError("context index out of range");
  return dists_[i];
}

Rational ProbabilityTable::probability(std::size_t i, const TotalAssignment& v) const {
  const auto& dist = distribution(i);
  auto it = dist.find(v);
  return it == dist.end() ? Rational(0) : it->second;
}

bool ProbabilityTable::operator==(const ProbabilityTable& o) const {
  return cover_ == o.cover_ && dists_ == o.dists_;
}

ProbabilityTable associated_table(const QuantumTeam& team, const Cover& cover) {
  if (!cover_leq(cover.sets(), team.support()))
    throw CoverError("cover " + format_cover(cover) + " is not dominated by the team support");
  std::vector<std::map<TotalAssignment, Rational>> dists;
  dists.reserve(cover.size());
  for (const SymbolSet& u : cover.sets()) {
    std::vector<std::size_t> idx = team.omega(u);
    std::map<TotalAssignment, std::size_t> counts;
    for (std::size_t i : idx) ++counts[team.rows()[i].restricted_to(u)];
    std::map<TotalAssignment, Rational> dist;
    for (const auto& [v, n] : counts)
      dist.emplace(v, Rational(BigInt(n), BigInt(idx.size())));
    dists.push_back(std::move(dist));
  }
  return ProbabilityTable(cover, std::move(dists));
}

QuantumTeam team_from_table(const ProbabilityTable& table) {
  std::vector<TotalAssignment> rows;
  for (std::size_t i = 0; i < table.contexts(); ++i) {
    BigInt block = 1;
    for (const auto& [v, p] : table.distribution(i)) block = lcm(block, denominator(p));
    for (const TotalAssignment& v : all_assignments(table.context_symbols(i))) {
      BigInt copies = numerator(table.probability(i, v) * block);
      for (BigInt c = 0; c < copies; ++c) rows.push_back(v);
    }
  }
  return QuantumTeam(std::move(rows));
}

// --- text formats ---------------------------------------------------------

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string f;
  while (in >> f) fields.push_back(f);
  return fields;
}

PropSymbol parse_symbol_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'p')
    throw ParseError("symbol name must look like p<digits>, got '" + name + "'");
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      throw ParseError("symbol name must look like p<digits>, got '" + name + "'");
  return PropSymbol{static_cast<unsigned>(std::stoul(name.substr(1)))};
}

}  // namespace

std::string format_team(const QuantumTeam& team) {
  SymbolSet dom = team.domain();
  std::string out;
  bool first = true;
  for (PropSymbol s : dom) {
    if (!first) out += " ";
    out += to_string(s);
    first = false;
  }
  out += "\n";
  for (const TotalAssignment& row : team.rows()) {
    first = true;
    for (PropSymbol s : dom) {
      if (!first) out += " ";
      out += row.contains(s) ? (row.value(s) ? "1" : "0") : "-";
      first = false;
    }
    out += "\n";
  }
  return out;
}

QuantumTeam parse_team(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t li = 0;
  while (li < lines.size() && split_fields(lines[li]).empty()) ++li;
  if (li == lines.size()) throw ParseError("team file has no header line");
  std::vector<PropSymbol> columns;
  for (const std::string& name : split_fields(lines[li])) columns.push_back(parse_symbol_name(name));
  if (columns.empty()) throw ParseError("team header lists no symbols");
  std::vector<TotalAssignment> rows;
  for (++li; li < lines.size(); ++li) {
    std::vector<std::string> fields = split_fields(lines[li]);
    if (fields.empty()) continue;
    if (fields.size() != columns.size())
      throw ParseError("team row has " + std::to_string(fields.size()) + " cells, expected " +
                       std::to_string(columns.size()));
    std::map<PropSymbol, bool> values;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "-") continue;
      if (fields[c] == "0" || fields[c] == "1")
        values.emplace(columns[c], fields[c] == "1");
      else
        throw ParseError("team cell must be 0, 1 or -, got '" + fields[c] + "'");
    }
    if (values.empty()) throw ParseError("team row with no determinate cell");
    rows.emplace_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("team file has no rows");
  return QuantumTeam(std::move(rows));
}

std::string format_table(const ProbabilityTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.contexts(); ++i) {
    const SymbolSet& u = table.context_symbols(i);
    out += "U:";
    for (PropSymbol s : u) out += " " + to_string(s);
    out += "\n";
    for (const TotalAssignment& v : all_assignments(u)) {
      std::string bits;
      for (PropSymbol s : u) bits += v.value(s) ? "1" : "0";
      out += bits + " " + to_string(table.probability(i, v)) + "\n";
    }
  }
  return out;
}

ProbabilityTable parse_table(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  std::vector<SymbolSet> sets;
  std::vector<std::map<TotalAssignment, Rational>> dists;
  for (const std::string& line : lines) {
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0] == "U:") {
      SymbolSet u;
      for (std::size_t i = 1; i < fields.size(); ++i) u.insert(parse_symbol_name(fields[i]));
      if (u.empty()) throw ParseError("table context lists no symbols");
      sets.push_back(std::move(u));
      dists.emplace_back();
    } else {
      if (sets.empty()) throw ParseError("table entry before any 'U:' header");
      if (fields.size() != 2)
        throw ParseError("table entry must be '<bits> <rational>', got '" + line + "'");
      const SymbolSet& u = sets.back();
      if (fields[0].size() != u.size())
        throw ParseError("assignment bits '" + fields[0] + "' do not match context size " +
                         std::to_string(u.size()));
      std::map<PropSymbol, bool> values;
      std::size_t c = 0;
      for (PropSymbol s : u) {
        char bit = fields[0][c++];
        if (bit != '0' && bit != '1')
          throw ParseError("assignment bits must be 0/1, got '" + fields[0] + "'");
        values.emplace(s, bit == '1');
      }
      TotalAssignment v(std::move(values));
      if (dists.back().count(v)) throw ParseError("duplicate assignment in table context");
      dists.back().emplace(std::move(v), parse_rational(fields[1]));
    }
  }
  if (sets.empty()) throw ParseError("table file has no contexts");
  return ProbabilityTable(Cover(std::move(sets)), std::move(dists));
}

Cover parse_cover(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::vector<SymbolSet> sets;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    if (compact[pos] != '{') throw ParseError("expected '{' in cover spec", pos);
    std::size_t close = compact.find('}', pos);
    if (close == std::string::npos) throw ParseError("unterminated '{' in cover spec", pos);
    SymbolSet u;
    std::size_t item = pos + 1;
    while (item < close) {
      std::size_t comma = compact.find(',', item);
      if (comma == std::string::npos || comma > close) comma = close;
      u.insert(parse_symbol_name(compact.substr(item, comma - item)));
      item = comma + 1;
    }
    if (u.empty()) throw ParseError("empty set in cover spec", pos);
    sets.push_back(std::move(u));
    pos = close + 1;
    if (pos < compact.size()) {
      if (compact[pos] != ';') throw ParseError("expected ';' between cover sets", pos);
      ++pos;
    }
  }
  return Cover(std::move(sets));
}

std::string format_cover(const Cover& cover) {
  std::string out;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i) out += ";";
    out += to_string(cover.sets()[i]);
  }
  return out;
}

}  // namespace qtl
