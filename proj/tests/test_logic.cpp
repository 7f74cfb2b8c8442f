#include "qtl/logic.hpp"

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qtl/error.hpp"
#include "qtl/parser.hpp"

using namespace qtl;
using test::bell_classical_team;
using test::bell_quantum_team;
using test::data_file;
using test::syms;

TEST_CASE("parsing linear atoms") {
  QtlFormula f = parse_qtl("1*[(p0&p1)|(!p0&!p1); {p0,p1}] >= 1");
  REQUIRE(f.kind() == QtlFormula::Kind::Atom);
  REQUIRE(f.atom().terms().size() == 1);
  CHECK(f.atom().terms()[0].first == 1);
  CHECK(f.atom().terms()[0].second.support() == syms({0, 1}));
  CHECK(f.atom().bound() == 1);

  // Rational bounds are cleared to integers.
  QtlFormula third = parse_qtl("[p0;{p0}] >= 1/3");
  REQUIRE(third.kind() == QtlFormula::Kind::Atom);
  CHECK(third.atom().terms()[0].first == 3);
  CHECK(third.atom().bound() == 1);
  CHECK(third == parse_qtl("3*[p0;{p0}] >= 1"));

  // The Bell-bound file: four named normal components, bound 3.
  FormulaFile file = parse_formula_file(data_file("bell_bound.qtl"));
  REQUIRE(file.formula.kind() == QtlFormula::Kind::Atom);
  CHECK(file.formula.atom().terms().size() == 4);
  for (const auto& [coeff, comp] : file.formula.atom().terms()) {
    CHECK(coeff == -1);  // <= is stored through the negated >= form
    CHECK(comp.is_normal());
  }
  CHECK(file.formula.atom().bound() == -3);
}

TEST_CASE("parse errors carry positions and kinds") {
  CHECK_THROWS_AS(parse_qtl("[p0;{p0}] >="), ParseError);
  CHECK_THROWS_AS(parse_qtl("[p0 &; {p0}] >= 1"), ParseError);
  CHECK_THROWS_AS(parse_qtl("nope >= 1"), ParseError);
  CHECK_THROWS_AS(parse_qtl("[p0] >= 1 extra"), ParseError);
  // Variables must sit inside the declared support.
  CHECK_THROWS_AS(parse_qtl("[p0 & p1; {p0}] >= 1"), SupportError);
}

TEST_CASE("components, supports, classical and normal classification") {
  QtlFormula f = parse_qtl("[p0;{p0,p1}] + [p2&p3;{p2,p3}] >= 1");
  CHECK(elementary_components(f).size() == 2);
  std::set<SymbolSet> sp = support(f);
  CHECK(sp == std::set<SymbolSet>{syms({0, 1}), syms({2, 3})});

  // Negation and conjunction are transparent.
  CHECK(elementary_components(QtlFormula::Not(f)) == elementary_components(f));
  QtlFormula g = parse_qtl("[p4;{p4}] >= 1");
  std::set<Component> combined = elementary_components(QtlFormula::And(f, g));
  CHECK(combined.size() == 3);
  CHECK(support(QtlFormula::And(f, g)).size() == 3);

  FormulaFile bound = parse_formula_file(data_file("bell_bound.qtl"));
  CHECK(is_normal(bound.formula));
  CHECK_FALSE(is_classical(bound.formula));
  CHECK(support(bound.formula) ==
        std::set<SymbolSet>{syms({0, 1}), syms({0, 3}), syms({1, 2}), syms({2, 3})});

  QtlFormula widened = classicalize(bound.formula);
  CHECK(is_classical(widened));
  CHECK_FALSE(is_normal(widened));
  CHECK(support(widened) == std::set<SymbolSet>{syms({0, 1, 2, 3})});

  QtlFormula mixed = parse_qtl("[p0;{p0}] + [p1;{p0,p1}] >= 1");
  CHECK_FALSE(is_classical(mixed));
  CHECK_FALSE(is_normal(mixed));
}

TEST_CASE("quantum team satisfaction") {
  QuantumTeam team = bell_quantum_team();

  // The violation formula holds on the quantum team: 1 + 3*(6/8) = 13/4.
  FormulaFile violation = parse_formula_file(data_file("bell_violation.qtl"));
  CHECK(satisfies(team, violation.formula));

  // And the bound itself fails there.
  FormulaFile bound = parse_formula_file(data_file("bell_bound.qtl"));
  CHECK_FALSE(satisfies(team, bound.formula));

  // Additivity fails on its counterexample team: 1/2 + 1/2 != 1/2.
  QuantumTeam counter = parse_team(data_file("additivity_counter.team"));
  FormulaFile additivity = parse_formula_file(data_file("additivity.qtl"));
  CHECK_FALSE(satisfies(counter, additivity.formula));

  // Propositionally equivalent formulas with different supports come apart:
  // 1/2 vs 0.
  QuantumTeam equiv_team = parse_team(data_file("equivalence_counter.team"));
  FormulaFile pair = parse_formula_file(data_file("equivalent_pair.qtl"));
  CHECK_FALSE(satisfies(equiv_team, pair.formula));
  std::vector<Component> comps(elementary_components(pair.formula).begin(),
                               elementary_components(pair.formula).end());
  REQUIRE(comps.size() == 2);
  CHECK(equiv_team.expectation(comps[0].support(), comps[0].formula()) == Rational(1, 2));
  CHECK(equiv_team.expectation(comps[1].support(), comps[1].formula()) == 0);

  CHECK_THROWS_AS(satisfies(counter, violation.formula), SupportError);
}

TEST_CASE("multi-team satisfaction") {
  QuantumTeam multi = bell_classical_team();

  // The classical team obeys the Bell bound: 1 + 6/8 + 6/8 + 2/8 = 11/4.
  FormulaFile bound = parse_formula_file(data_file("bell_bound.qtl"));
  CHECK(ptl_satisfies(multi, bound.formula));

  // Tautologies have expectation 1 on any multi-team.
  CHECK(ptl_satisfies(multi, parse_qtl("[p0 | !p0] = 1")));

  // The first pair is perfectly correlated in the classical team.
  CHECK(ptl_satisfies(multi, parse_qtl("[(p0 & p1) | (!p0 & !p1)] = 1")));

  QuantumTeam quantum = bell_quantum_team();
  CHECK_THROWS_AS(ptl_satisfies(quantum, bound.formula), NotMultiTeamError);
  CHECK_THROWS_AS(ptl_satisfies(multi, parse_qtl("[p9] >= 0")), DomainError);
}

TEST_CASE("negation and conjunction clauses") {
  QuantumTeam team = bell_quantum_team();
  std::mt19937 rng(43);
  std::vector<std::string> pool = {
      "[p0;{p0,p1}] >= 1/2",  "2*[p0 & p1; {p0,p1}] <= 1", "[p2;{p2,p3}] > 1/4",
      "[p3;{p2,p3}] < 3/4",   "[p0 <-> p1; {p0,p1}] = 1",  "[p2 | p3; {p2,p3}] >= 1/8",
  };
  for (const std::string& a : pool) {
    QtlFormula f = parse_qtl(a);
    CHECK(satisfies(team, QtlFormula::Not(f)) != satisfies(team, f));
    for (const std::string& b : pool) {
      QtlFormula g = parse_qtl(b);
      CHECK(satisfies(team, QtlFormula::And(f, g)) ==
            (satisfies(team, f) && satisfies(team, g)));
    }
  }
}

TEST_CASE("multi-team agreement between quantum and widened semantics") {
  QuantumTeam multi = bell_classical_team();
  std::vector<std::string> formulas = {
      "[p0] + [p1] >= 1",
      "[(p0 & p1) | (!p0 & !p1)] = 1",
      "2*[p2] - [p3] <= 1",
      "!([p0 & p3] > 1/2)",
      "[p0] >= 1/2 & [p2] >= 1/4",
  };
  for (const std::string& text : formulas) {
    QtlFormula f = parse_qtl(text);
    CHECK(ptl_satisfies(multi, f) == satisfies(multi, classicalize(f)));
    // Normal formulas evaluate identically under both semantics on
    // multi-teams.
    CHECK(ptl_satisfies(multi, f) == satisfies(multi, f));
  }
}

TEST_CASE("printing reparses to the same tree") {
  std::vector<std::string> formulas = {
      "[p0;{p0}] >= 1/3",
      "1*[(p0&p1)|(!p0&!p1); {p0,p1}] >= 1",
      "[p0] = 1 & !([p0 & p1] - [p1] = 0)",
      "([p0] >= 1 | [p1] < 1) -> [p0 -> p1] > 0",
      "2*[p0] - 3*[p1] + [p0] <= 5/7",
      "true & !(false)",
  };
  for (const std::string& text : formulas) {
    QtlFormula once = parse_qtl(text);
    QtlFormula again = parse_qtl(once.to_string());
    CHECK(once == again);
    CHECK(once.to_string() == again.to_string());
  }
  std::mt19937 rng(47);
  for (int round = 0; round < 60; ++round) {
    PropFormula f = test::random_prop(rng, {0, 1, 2, 3}, 3);
    PropFormula reparsed = parse_prop(f.to_string());
    CHECK(f.compare(reparsed) == 0);
  }
}

TEST_CASE("abbreviations: equality is the conjunction of both bounds") {
  QuantumTeam team = bell_quantum_team();
  std::vector<std::pair<std::string, std::string>> cases = {
      {"[p0;{0,p1}]", ""},  // placeholder, replaced below
  };
  cases.clear();
  std::vector<std::string> exprs = {"[p0;{p0,p1}]", "2*[p0&p1;{p0,p1}]", "[p2;{p2,p3}] + [p3;{p2,p3}]"};
  std::vector<std::string> bounds = {"0", "1/2", "1", "2"};
  for (const std::string& e : exprs) {
    for (const std::string& c : bounds) {
      bool eq = satisfies(team, parse_qtl(e + " = " + c));
      bool ge = satisfies(team, parse_qtl(e + " >= " + c));
      bool le = satisfies(team, parse_qtl(e + " <= " + c));
      CHECK(eq == (ge && le));
      bool lt = satisfies(team, parse_qtl(e + " < " + c));
      CHECK(lt == !ge);
      bool gt = satisfies(team, parse_qtl(e + " > " + c));
      CHECK(gt == !le);
    }
  }
}

TEST_CASE("duplicate components merge and cancellation folds to truth") {
  QtlFormula merged = parse_qtl("[p0] + 2*[p0] >= 1");
  REQUIRE(merged.kind() == QtlFormula::Kind::Atom);
  REQUIRE(merged.atom().terms().size() == 1);
  CHECK(merged.atom().terms()[0].first == 3);

  CHECK(parse_qtl("[p0] - [p0] >= 0").kind() == QtlFormula::Kind::True);
  CHECK(parse_qtl("[p0] - [p0] >= 1").kind() == QtlFormula::Kind::Not);
  CHECK(parse_qtl("1/2 + 1/2 = 1").kind() == QtlFormula::Kind::True);
}
