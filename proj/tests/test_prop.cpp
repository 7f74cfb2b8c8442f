#include "qtl/prop.hpp"

#include <doctest.h>

#include "helpers.hpp"
#include "qtl/error.hpp"

using namespace qtl;
using test::bell_phis;
using test::random_prop;
using test::syms;

TEST_CASE("eval handles every connective") {
  PropFormula f = PropFormula::Iff(PropFormula::Sym(0u), PropFormula::Sym(1u));
  CHECK(eval(f, TotalAssignment::of({{0, true}, {1, true}})));
  CHECK(eval(f, TotalAssignment::of({{0, false}, {1, false}})));
  CHECK_FALSE(eval(f, TotalAssignment::of({{0, true}, {1, false}})));

  // First pair-correlation formula on the all-ones row.
  PropFormula phi0 = bell_phis()[0];
  CHECK(eval(phi0, TotalAssignment::of({{0, true}, {1, true}})));

  // Anti-correlation of p2/p3 fails when both are 1.
  PropFormula phi3 = bell_phis()[3];
  CHECK_FALSE(eval(phi3, TotalAssignment::of({{2, true}, {3, true}})));
}

TEST_CASE("eval rejects symbols outside the assignment domain") {
  PropFormula f = PropFormula::And(PropFormula::Sym(0u), PropFormula::Sym(7u));
  CHECK_THROWS_AS(eval(f, TotalAssignment::of({{0, true}})), DomainError);
}

TEST_CASE("minterm builds one positive-or-negated literal per symbol") {
  CHECK(minterm(TotalAssignment::of({{0, true}})).to_string() == "p0");
  CHECK(minterm(TotalAssignment::of({{0, true}, {1, false}})).to_string() == "p0 & !p1");
  CHECK_THROWS_AS(minterm(TotalAssignment()), DomainError);
}

TEST_CASE("minterm characterizes exactly its assignment") {
  // Exhaustive: over every s on {p0,p1} and every s' on {p0,p1,p2,p3},
  // the minterm of s holds at s' iff s' restricts to s.
  for (const TotalAssignment& s : all_assignments(syms({0, 1}))) {
    PropFormula m = minterm(s);
    for (const TotalAssignment& full : all_assignments(syms({0, 1, 2, 3}))) {
      bool matches = full.restricted_to(syms({0, 1})) == s;
      CHECK(eval(m, full) == matches);
    }
  }
}

TEST_CASE("all_assignments is canonical and complete") {
  std::vector<TotalAssignment> rows = all_assignments(syms({0, 1}));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == TotalAssignment::of({{0, true}, {1, true}}));
  CHECK(rows[1] == TotalAssignment::of({{0, true}, {1, false}}));
  CHECK(rows[2] == TotalAssignment::of({{0, false}, {1, true}}));
  CHECK(rows[3] == TotalAssignment::of({{0, false}, {1, false}}));
}

TEST_CASE("is_contradictory") {
  PropFormula p0 = PropFormula::Sym(0u);
  CHECK(is_contradictory(PropFormula::And(p0, PropFormula::Not(p0))));

  std::vector<PropFormula> phis = bell_phis();
  CHECK(is_contradictory(conjoin(phis)));

  // A single pair-correlation formula is satisfiable: enumeration finds
  // {p0:1,p1:1}.
  CHECK_FALSE(is_contradictory(phis[0]));
  bool witnessed = false;
  for (const TotalAssignment& s : all_assignments(phis[0].variables()))
    if (eval(phis[0], s)) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("prop_equiv") {
  PropFormula phi = PropFormula::And(
      PropFormula::Or(PropFormula::Sym(0u), PropFormula::Not(PropFormula::Sym(0u))),
      PropFormula::Sym(1u));
  PropFormula psi = PropFormula::And(
      PropFormula::Or(PropFormula::Sym(2u), PropFormula::Not(PropFormula::Sym(2u))),
      PropFormula::Sym(1u));
  CHECK(prop_equiv(phi, psi));
  CHECK_FALSE(prop_equiv(PropFormula::Sym(0u), PropFormula::Not(PropFormula::Sym(0u))));
}

TEST_CASE("a formula is equivalent to the disjunction of its satisfying minterms") {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    PropFormula f = random_prop(rng, {0, 1, 2}, 3);
    std::vector<PropFormula> parts;
    for (const TotalAssignment& s : all_assignments(f.variables()))
      if (eval(f, s)) parts.push_back(minterm(s));
    if (parts.empty()) {
      CHECK(is_contradictory(f));
      continue;
    }
    PropFormula dnf = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) dnf = PropFormula::Or(dnf, parts[i]);
    CHECK(prop_equiv(f, dnf));
  }
}

TEST_CASE("properties: minterm evaluation, contradiction via equivalence, double negation") {
  std::mt19937 rng(11);
  PropFormula falsum = PropFormula::And(PropFormula::Sym(9u), PropFormula::Not(PropFormula::Sym(9u)));
  for (int round = 0; round < 100; ++round) {
    PropFormula f = random_prop(rng, {0, 1, 2, 3}, 3);
    CHECK(is_contradictory(f) == prop_equiv(f, falsum));
    CHECK(prop_equiv(PropFormula::Not(PropFormula::Not(f)), f));
  }
  for (const TotalAssignment& s : all_assignments(syms({0, 1, 2})))
    CHECK(eval(minterm(s), s));
}

TEST_CASE("enumeration refuses oversized symbol sets") {
  SymbolSet big;
  for (unsigned i = 0; i < 25; ++i) big.insert(PropSymbol{i});
  CHECK_THROWS_AS(all_assignments(big), ResourceError);
}
