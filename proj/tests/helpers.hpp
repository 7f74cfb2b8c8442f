#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtl/parser.hpp"
#include "qtl/prop.hpp"
#include "qtl/team.hpp"

namespace qtl::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string data_file(const std::string& name) {
  return read_file(std::string(QTL_DATA_DIR) + "/" + name);
}

/// The four pair-correlation formulas used throughout: equality of p0/p1,
/// p0/p3, p1/p2 and inequality of p2/p3. Their conjunction is contradictory.
inline std::vector<PropFormula> bell_phis() {
  return parse_prop_list(data_file("bell.props"));
}

inline QuantumTeam bell_quantum_team() { return parse_team(data_file("bell_quantum.team")); }
inline QuantumTeam bell_classical_team() { return parse_team(data_file("bell_classical.team")); }

inline SymbolSet syms(std::initializer_list<unsigned> indices) {
  SymbolSet out;
  for (unsigned i : indices) out.insert(PropSymbol{i});
  return out;
}

/// Depth-bounded random propositional formula over the given symbols.
inline PropFormula random_prop(std::mt19937& rng, const std::vector<unsigned>& symbols,
                               int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 5);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  switch (kind(rng)) {
    case 1: return PropFormula::Not(random_prop(rng, symbols, depth - 1));
    case 2:
      return PropFormula::And(random_prop(rng, symbols, depth - 1),
                              random_prop(rng, symbols, depth - 1));
    case 3:
      return PropFormula::Or(random_prop(rng, symbols, depth - 1),
                             random_prop(rng, symbols, depth - 1));
    case 4:
      return PropFormula::Implies(random_prop(rng, symbols, depth - 1),
                                  random_prop(rng, symbols, depth - 1));
    case 5:
      return PropFormula::Iff(random_prop(rng, symbols, depth - 1),
                              random_prop(rng, symbols, depth - 1));
    default: return PropFormula::Sym(symbols[pick(rng)]);
  }
}

}  // namespace qtl::test
