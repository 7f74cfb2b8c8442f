#include "qtl/team.hpp"

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qtl/error.hpp"

using namespace qtl;
using test::bell_classical_team;
using test::bell_phis;
using test::bell_quantum_team;
using test::data_file;
using test::syms;

TEST_CASE("omega selects the rows whose domain contains the context") {
  QuantumTeam team = bell_quantum_team();
  std::vector<std::size_t> first = team.omega(syms({0, 1}));
  REQUIRE(first.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(first[i] == i);
  CHECK(team.omega(syms({0, 2})).empty());

  QuantumTeam multi = bell_classical_team();
  CHECK(multi.omega(syms({1, 3})).size() == multi.size());
}

TEST_CASE("restriction to a measured pair yields a multi-team") {
  QuantumTeam team = bell_quantum_team();
  QuantumTeam pair = team.restricted_to(syms({0, 1}));
  REQUIRE(pair.size() == 8);
  CHECK(pair.is_multi_team());
  std::size_t ones = 0;
  for (const TotalAssignment& row : pair.rows())
    if (row.value(PropSymbol{0}) && row.value(PropSymbol{1})) ++ones;
  CHECK(ones == 4);
  CHECK_THROWS_AS(team.restricted_to(syms({0, 2})), RestrictionError);

  QuantumTeam multi = bell_classical_team();
  CHECK(multi.restricted_to(multi.domain()) == multi);

  QuantumTeam counter = parse_team(data_file("additivity_counter.team"));
  QuantumTeam p0_only = counter.restricted_to(syms({0}));
  REQUIRE(p0_only.size() == 4);
  CHECK(p0_only.rows()[0].value(PropSymbol{0}));
  CHECK(p0_only.rows()[1].value(PropSymbol{0}));
  CHECK_FALSE(p0_only.rows()[2].value(PropSymbol{0}));
  CHECK_FALSE(p0_only.rows()[3].value(PropSymbol{0}));
}

TEST_CASE("probability counts matching restrictions exactly") {
  QuantumTeam team = bell_quantum_team();
  CHECK(team.probability(syms({0, 3}), TotalAssignment::of({{0, true}, {3, true}})) ==
        Rational(3, 8));

  QuantumTeam single(std::vector<TotalAssignment>{TotalAssignment::of({{0, true}})});
  CHECK(single.probability(syms({0}), TotalAssignment::of({{0, true}})) == 1);

  Rational total = 0;
  for (const TotalAssignment& v : all_assignments(syms({0, 3})))
    total += team.probability(syms({0, 3}), v);
  CHECK(total == 1);

  CHECK_THROWS_AS(team.probability(syms({0, 3}), TotalAssignment::of({{0, true}})), DomainError);
}

TEST_CASE("expectations on the quantum team reproduce the violation components") {
  QuantumTeam team = bell_quantum_team();
  std::vector<PropFormula> phis = bell_phis();
  CHECK(team.expectation(phis[0]) == 1);
  CHECK(team.expectation(phis[1]) == Rational(6, 8));
  CHECK(team.expectation(phis[2]) == Rational(6, 8));
  CHECK(team.expectation(phis[3]) == Rational(6, 8));
}

TEST_CASE("additivity fails on the counterexample team") {
  QuantumTeam team = parse_team(data_file("additivity_counter.team"));
  PropFormula p0 = PropFormula::Sym(0u);
  PropFormula p1 = PropFormula::Sym(1u);
  Rational both = team.expectation(PropFormula::And(p0, p1));
  Rational left = team.expectation(PropFormula::And(p0, PropFormula::Not(p1)));
  CHECK(both == Rational(1, 2));
  CHECK(left == Rational(1, 2));
  CHECK(both + left != team.expectation(p0));
  CHECK(team.expectation(p0) == Rational(1, 2));
}

TEST_CASE("associated tables") {
  Cover four_pairs = parse_cover("{p0,p1};{p0,p3};{p1,p2};{p2,p3}");

  // Bell's table arises from the quantum team.
  ProbabilityTable bell = associated_table(bell_quantum_team(), four_pairs);
  CHECK(bell == parse_table(data_file("bell.table")));

  // The classical multi-team induces the single-context table and the full
  // classical table.
  QuantumTeam multi = bell_classical_team();
  CHECK(associated_table(multi, parse_cover("{p0,p1}")) ==
        parse_table(data_file("single_context.table")));
  CHECK(associated_table(multi, four_pairs) == parse_table(data_file("classical.table")));

  CHECK_THROWS_AS(associated_table(bell_quantum_team(), parse_cover("{p0,p2}")), CoverError);
}

TEST_CASE("team_from_table uses the least common denominator per context") {
  // One-context table with probability 1 gives a single row.
  ProbabilityTable unit(Cover({syms({0})}),
                        {{{TotalAssignment::of({{0, true}}), Rational(1)}}});
  QuantumTeam single = team_from_table(unit);
  REQUIRE(single.size() == 1);
  CHECK(single.rows()[0] == TotalAssignment::of({{0, true}}));

  // Bell's table: denominators 2, 8, 8, 8 per context.
  QuantumTeam bell = team_from_table(parse_table(data_file("bell.table")));
  CHECK(bell.size() == 2 + 8 + 8 + 8);
  CHECK(associated_table(bell, parse_table(data_file("bell.table")).cover()) ==
        parse_table(data_file("bell.table")));

  // The box table is uniform with denominator 2.
  QuantumTeam box = team_from_table(parse_table(data_file("pr_box.table")));
  CHECK(box.size() == 8);
  CHECK(associated_table(box, parse_table(data_file("pr_box.table")).cover()) ==
        parse_table(data_file("pr_box.table")));
}

TEST_CASE("cover order") {
  std::vector<SymbolSet> lhs{syms({0})};
  std::vector<SymbolSet> rhs{syms({0, 1})};
  CHECK(cover_leq(lhs, rhs));
  std::vector<SymbolSet> undominated{syms({0, 2})};
  CHECK_FALSE(cover_leq(undominated, bell_quantum_team().support()));
  std::vector<SymbolSet> family{syms({0, 1}), syms({2})};
  CHECK(cover_leq(family, family));
}

TEST_CASE("round trip: random rational tables survive team_from_table") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<unsigned> sym(0, 4);
  std::uniform_int_distribution<int> set_count(1, 3), set_size(1, 3), den(1, 12);
  for (int round = 0; round < 200; ++round) {
    // Pairwise incomparable cover sets: a context nested inside another pools
    // with it on re-association, so only antichain covers round-trip.
    std::set<SymbolSet> sets;
    int n = set_count(rng);
    for (int attempts = 0; static_cast<int>(sets.size()) < n && attempts < 50; ++attempts) {
      SymbolSet u;
      int size = set_size(rng);
      while (static_cast<int>(u.size()) < size) u.insert(PropSymbol{sym(rng)});
      bool comparable = false;
      for (const SymbolSet& v : sets) {
        if (std::includes(u.begin(), u.end(), v.begin(), v.end()) ||
            std::includes(v.begin(), v.end(), u.begin(), u.end()))
          comparable = true;
      }
      if (!comparable) sets.insert(u);
    }
    Cover cover(std::vector<SymbolSet>(sets.begin(), sets.end()));
    // Random distribution with denominator <= 12 per context.
    std::vector<std::map<TotalAssignment, Rational>> dists;
    for (const SymbolSet& u : cover.sets()) {
      std::vector<TotalAssignment> rows = all_assignments(u);
      int d = den(rng);
      std::vector<int> weights(rows.size(), 0);
      for (int i = 0; i < d; ++i) ++weights[std::uniform_int_distribution<std::size_t>(
          0, rows.size() - 1)(rng)];
      std::map<TotalAssignment, Rational> dist;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (weights[i] > 0) dist.emplace(rows[i], Rational(weights[i], d));
      dists.push_back(std::move(dist));
    }
    ProbabilityTable table(cover, std::move(dists));
    CHECK(associated_table(team_from_table(table), table.cover()) == table);
  }
}

TEST_CASE("probabilities are exact and expectations complement") {
  std::mt19937 rng(29);
  QuantumTeam team = bell_quantum_team();
  for (int round = 0; round < 40; ++round) {
    PropFormula f = test::random_prop(rng, {0, 1}, 2);
    SymbolSet u = syms({0, 1});
    CHECK(team.expectation(u, f) + team.expectation(u, PropFormula::Not(f)) == 1);
  }
  // Additivity within one context.
  for (int round = 0; round < 40; ++round) {
    PropFormula f = test::random_prop(rng, {2, 3}, 2);
    PropFormula g = test::random_prop(rng, {2, 3}, 2);
    SymbolSet u = syms({2, 3});
    CHECK(team.expectation(u, PropFormula::And(f, g)) +
              team.expectation(u, PropFormula::And(f, PropFormula::Not(g))) ==
          team.expectation(u, f));
  }
}

TEST_CASE("multi-team expectations are context-independent") {
  QuantumTeam multi = bell_classical_team();
  std::mt19937 rng(31);
  for (int round = 0; round < 40; ++round) {
    PropFormula f = test::random_prop(rng, {0, 1, 2, 3}, 2);
    CHECK(multi.expectation(f) == multi.expectation(multi.domain(), f));
  }
}

TEST_CASE("team text format round-trips") {
  std::string text = data_file("bell_quantum.team");
  QuantumTeam team = parse_team(text);
  CHECK(format_team(team) == text);

  std::string table_text = data_file("bell.table");
  ProbabilityTable table = parse_table(table_text);
  CHECK(format_table(table) == table_text);

  Cover cover = parse_cover(" {p0, p1} ; {p2}");
  CHECK(format_cover(cover) == "{p0,p1};{p2}");
  CHECK(parse_cover(format_cover(cover)) == cover);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(parse_team("p0 p1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_team("p0\n"), ParseError);
  CHECK_THROWS_AS(parse_table("U: p0\n1 1/2\n"), TableError);  // sums to 1/2
  CHECK_THROWS_AS(parse_table("U: p0\n1 3/2\n0 -1/2\n"), TableError);
  CHECK_THROWS_AS(Cover({SymbolSet{}}), CoverError);
  CHECK_THROWS_AS(Cover({syms({0})}, syms({0, 1})), CoverError);
}
