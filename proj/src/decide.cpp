#include "qtl/decide.hpp"

#include <algorithm>
#include <vector>

#include "qtl/error.hpp"
#include "qtl/lin.hpp"

namespace qtl {

namespace {

Component assignment_component(const TotalAssignment& s, const SymbolSet& v) {
  return Component(minterm(s), v);
}

// lhs = rhs over component terms, folded to True when everything cancels.
QtlFormula equality(const std::vector<LinAtom::Term>& lhs, const std::vector<LinAtom::Term>& rhs,
                    const BigInt& bound) {
  std::map<Component, BigInt> merged;
  for (const auto& [a, c] : lhs) merged[c] += a;
  for (const auto& [a, c] : rhs) merged[c] -= a;
  std::vector<LinAtom::Term> terms;
  for (auto& [c, a] : merged)
    if (a != 0) terms.emplace_back(a, c);
  if (terms.empty()) {
    return bound == 0 ? QtlFormula::True() : QtlFormula::Not(QtlFormula::True());
  }
  std::vector<LinAtom::Term> neg;
  neg.reserve(terms.size());
  for (const auto& [a, c] : terms) neg.emplace_back(-a, c);
  return QtlFormula::And(QtlFormula::Atom(LinAtom::geq(terms, bound)),
                         QtlFormula::Atom(LinAtom::geq(std::move(neg), -bound)));
}

QtlFormula component_equals(const Component& c, int value) {
  return equality({{1, c}}, {}, value);
}

// (f; V) = sum of the assignment components on V whose restriction satisfies
// f. Trivially True when f is itself one of the assignment formulas.
QtlFormula expansion_equation(const Component& comp) {
  std::vector<LinAtom::Term> rhs;
  for (const TotalAssignment& s : all_assignments(comp.support()))
    if (eval(comp.formula(), s)) rhs.emplace_back(1, assignment_component(s, comp.support()));
  return equality({{1, comp}}, rhs, 0);
}

std::vector<SymbolSet> sorted_supports(const std::set<SymbolSet>& supports) {
  return {supports.begin(), supports.end()};
}

void check_support_caps(const std::set<SymbolSet>& supports, const DecideLimits& limits) {
  if (supports.size() > limits.max_supports)
    throw ResourceError("support family of size " + std::to_string(supports.size()) +
                        " exceeds the cap of " + std::to_string(limits.max_supports));
  std::size_t conjuncts = 0;
  for (const SymbolSet& v : supports) {
    if (v.size() >= 20) throw ResourceError("support " + to_string(v) + " is too large");
    conjuncts += std::size_t{1} << v.size();
    if (conjuncts > limits.max_conjuncts)
      throw ResourceError("assignment enumeration exceeds the conjunct cap");
  }
}

QtlFormula build_beta_impl(const std::set<SymbolSet>& supports, const DecideLimits& limits,
                           bool prune_equal_pairs) {
  check_support_caps(supports, limits);
  std::vector<SymbolSet> order = sorted_supports(supports);
  std::size_t conjuncts = 0;
  std::vector<QtlFormula> zero_half, one_half;
  for (const SymbolSet& v : order) {
    for (const SymbolSet& w : order) {
      if (!std::includes(w.begin(), w.end(), v.begin(), v.end())) continue;
      if (prune_equal_pairs && v == w) continue;
      conjuncts += std::size_t{1} << v.size();
      if (conjuncts > limits.max_conjuncts)
        throw ResourceError("support-monotonicity closure exceeds the conjunct cap");
      for (const TotalAssignment& s : all_assignments(v)) {
        Component low = assignment_component(s, v);
        Component high = assignment_component(s, w);
        zero_half.push_back(
            QtlFormula::Implies(component_equals(low, 0), component_equals(high, 0)));
        one_half.push_back(
            QtlFormula::Implies(component_equals(low, 1), component_equals(high, 1)));
      }
    }
  }
  return QtlFormula::And(QtlFormula::and_all(zero_half), QtlFormula::and_all(one_half));
}

QtlFormula build_gamma_impl(const std::set<SymbolSet>& supports,
                            const std::set<Component>& components, const DecideLimits& limits) {
  check_support_caps(supports, limits);
  std::vector<QtlFormula> parts;
  for (const SymbolSet& v : sorted_supports(supports)) {
    std::vector<LinAtom::Term> sum;
    std::vector<QtlFormula> nonneg;
    for (const TotalAssignment& s : all_assignments(v)) {
      Component c = assignment_component(s, v);
      sum.emplace_back(1, c);
      nonneg.push_back(QtlFormula::Atom(LinAtom::geq({{1, c}}, 0)));
    }
    parts.push_back(equality(sum, {}, 1));
    parts.push_back(QtlFormula::and_all(nonneg));
  }
  std::vector<QtlFormula> expansions;
  for (const Component& c : components) {
    QtlFormula eq = expansion_equation(c);
    if (eq.kind() != QtlFormula::Kind::True) expansions.push_back(std::move(eq));
  }
  return QtlFormula::And(QtlFormula::and_all(parts), QtlFormula::and_all(expansions));
}

}  // namespace

QtlFormula build_beta(const std::set<SymbolSet>& supports, const DecideLimits& limits) {
  return build_beta_impl(supports, limits, /*prune_equal_pairs=*/false);
}

QtlFormula build_gamma(const QtlFormula& alpha, const DecideLimits& limits) {
  return build_gamma_impl(support(alpha), elementary_components(alpha), limits);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::SatisfiableNotValid: return "satisfiable";
    case Verdict::Unsatisfiable: return "unsatisfiable";
  }
  throw InternalError("to_string: unknown verdict");
}

// --- search -----------------------------------------------------------------

namespace {

struct IrNode {
  enum class K { True, Atom, Not, And };
  K kind;
  std::size_t atom = 0;    // K::Atom
  std::size_t a = 0, b = 0;  // children
};

class Search {
 public:
  Search(const QtlFormula& delta, const DecideLimits& limits, SearchStats* stats)
      : limits_(limits), stats_(stats) {
    root_ = compile(delta);
    if (atoms_.size() > limits.max_atoms)
      throw ResourceError("formula closure has " + std::to_string(atoms_.size()) +
                          " atoms, exceeding the cap of " + std::to_string(limits.max_atoms));
    if (components_.size() > limits.max_variables)
      throw ResourceError("formula closure has " + std::to_string(components_.size()) +
                          " components, exceeding the cap of " +
                          std::to_string(limits.max_variables));
    assign_.assign(atoms_.size(), -1);
  }

  /// Runs the sign-assignment enumeration; returns witness component values
  /// for the first assignment whose constraint system is feasible.
  std::optional<std::map<Component, Rational>> run() {
    std::vector<Goal> goals{{root_, true}};
    std::optional<std::map<Component, Rational>> found;
    search(goals, found);
    return found;
  }

 private:
  struct Goal {
    std::size_t node;
    bool want;
  };

  std::size_t compile(const QtlFormula& f) {
    switch (f.kind()) {
      case QtlFormula::Kind::True:
        pool_.push_back({IrNode::K::True});
        return pool_.size() - 1;
      case QtlFormula::Kind::Atom: {
        const LinAtom& atom = f.atom();
        auto [it, inserted] = atom_ids_.emplace(atom, atoms_.size());
        if (inserted) {
          atoms_.push_back(atom);
          for (const auto& [coeff, comp] : atom.terms()) {
            auto [cit, cinserted] = component_ids_.emplace(comp, components_.size());
            if (cinserted) components_.push_back(comp);
          }
        }
        pool_.push_back({IrNode::K::Atom, it->second});
        return pool_.size() - 1;
      }
      case QtlFormula::Kind::Not: {
        std::size_t child = compile(f.operand());
        pool_.push_back({IrNode::K::Not, 0, child});
        return pool_.size() - 1;
      }
      case QtlFormula::Kind::And: {
        std::size_t a = compile(f.left());
        std::size_t b = compile(f.right());
        pool_.push_back({IrNode::K::And, 0, a, b});
        return pool_.size() - 1;
      }
    }
    throw InternalError("compile: unknown node kind");
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      assign_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  // Enumerates partial sign assignments satisfying the goal stack; disjoint
  // branches, first feasible leaf wins.
  bool search(std::vector<Goal>& goals, std::optional<std::map<Component, Rational>>& found) {
    while (!goals.empty()) {
      Goal g = goals.back();
      goals.pop_back();
      const IrNode& n = pool_[g.node];
      switch (n.kind) {
        case IrNode::K::True:
          if (!g.want) return false;
          break;
        case IrNode::K::Atom: {
          std::int8_t want = g.want ? 1 : 0;
          if (assign_[n.atom] == -1) {
            assign_[n.atom] = want;
            trail_.push_back(n.atom);
          } else if (assign_[n.atom] != want) {
            return false;
          }
          break;
        }
        case IrNode::K::Not:
          goals.push_back({n.a, !g.want});
          break;
        case IrNode::K::And:
          if (g.want) {
            goals.push_back({n.a, true});
            goals.push_back({n.b, true});
          } else {
            std::size_t mark = trail_.size();
            {
              std::vector<Goal> left = goals;
              left.push_back({n.a, false});
              if (search(left, found)) return true;
            }
            undo_to(mark);
            {
              std::vector<Goal> right = goals;
              right.push_back({n.a, true});
              right.push_back({n.b, false});
              if (search(right, found)) return true;
            }
            undo_to(mark);
            return false;
          }
          break;
      }
    }
    return leaf(found);
  }

  bool leaf(std::optional<std::map<Component, Rational>>& found) {
    if (stats_) ++stats_->assignments_tried;
    lin::LinSystem system(components_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (assign_[i] == -1) continue;
      std::map<lin::VarId, Rational> coeffs;
      for (const auto& [coeff, comp] : atoms_[i].terms())
        coeffs.emplace(component_ids_.at(comp), Rational(coeff));
      lin::LinConstraint c{std::move(coeffs), lin::Rel::Ge, Rational(atoms_[i].bound())};
      system.add(assign_[i] == 1 ? c : lin::negate(c));
    }
    lin::FeasibleStats fm;
    std::optional<std::vector<Rational>> witness = system.feasible(&fm);
    if (stats_) stats_->fm_eliminations += fm.eliminations;
    if (!witness) return false;
    std::map<Component, Rational> values;
    for (std::size_t i = 0; i < components_.size(); ++i)
      values.emplace(components_[i], (*witness)[i]);
    found = std::move(values);
    return true;
  }

  DecideLimits limits_;
  SearchStats* stats_;
  std::vector<IrNode> pool_;
  std::size_t root_ = 0;
  std::map<LinAtom, std::size_t> atom_ids_;
  std::vector<LinAtom> atoms_;
  std::map<Component, std::size_t> component_ids_;
  std::vector<Component> components_;
  std::vector<std::int8_t> assign_;
  std::vector<std::size_t> trail_;
};

// alpha conjoined with the pruned monotonicity closure, the distribution
// scaffolding, and expansion equations for every component the closure
// introduced.
QtlFormula augment(const QtlFormula& alpha, const DecideLimits& limits) {
  std::set<SymbolSet> supports = support(alpha);
  QtlFormula beta = build_beta_impl(supports, limits, /*prune_equal_pairs=*/true);
  std::set<Component> components = elementary_components(alpha);
  std::set<Component> beta_components = elementary_components(beta);
  components.insert(beta_components.begin(), beta_components.end());
  QtlFormula gamma = build_gamma_impl(supports, components, limits);
  return QtlFormula::And(QtlFormula::And(alpha, beta), gamma);
}

}  // namespace

QuantumTeam synthesize_team(const std::map<Component, Rational>& values,
                            const std::set<SymbolSet>& supports) {
  if (supports.empty()) throw InternalError("synthesize_team with no supports");

  // Supersets come first: |V| descending, ties broken lexicographically.
  std::vector<SymbolSet> order = sorted_supports(supports);
  std::stable_sort(order.begin(), order.end(),
                   [](const SymbolSet& a, const SymbolSet& b) { return a.size() > b.size(); });

  // Per support, the block multi-team sized by the least common denominator.
  struct Block {
    std::vector<TotalAssignment> assignments;  // canonical order
    std::vector<Rational> probs;
    std::vector<BigInt> counts;  // probs scaled by the block size
    BigInt size = 1;
  };
  std::map<SymbolSet, Block> blocks;
  for (const SymbolSet& v : order) {
    Block block;
    Rational total = 0;
    for (const TotalAssignment& s : all_assignments(v)) {
      auto it = values.find(assignment_component(s, v));
      if (it == values.end())
        throw InternalError("witness lacks a value for an assignment component on " +
                            to_string(v));
      if (it->second < 0 || it->second > 1)
        throw InternalError("witness assignment value outside [0,1]");
      total += it->second;
      block.assignments.push_back(s);
      block.probs.push_back(it->second);
      block.size = lcm(block.size, denominator(it->second));
    }
    if (total != 1)
      throw InternalError("witness assignment values on " + to_string(v) + " sum to " +
                          to_string(total));
    for (const Rational& p : block.probs) block.counts.push_back(numerator(p * block.size));
    blocks.emplace(v, std::move(block));
  }

  std::vector<TotalAssignment> rows;
  std::vector<SymbolSet> done;
  for (std::size_t stage = 0; stage < order.size(); ++stage) {
    const SymbolSet& v = order[stage];
    const Block& block = blocks.at(v);
    bool has_superset = false;
    for (const SymbolSet& w : order)
      if (w != v && std::includes(w.begin(), w.end(), v.begin(), v.end())) has_superset = true;

    if (!has_superset) {
      // The block is appended verbatim.
      for (std::size_t i = 0; i < block.assignments.size(); ++i)
        for (BigInt c = 0; c < block.counts[i]; ++c) rows.push_back(block.assignments[i]);
    } else {
      // Gluing: rows defined on v already exist; append enough rows with
      // domain v to shift the frequencies to the block's values.
      BigInt k = 0;
      std::vector<BigInt> existing(block.assignments.size(), BigInt(0));
      for (const TotalAssignment& row : rows) {
        bool defined = true;
        for (PropSymbol s : v)
          if (!row.contains(s)) defined = false;
        if (!defined) continue;
        ++k;
        TotalAssignment r = row.restricted_to(v);
        for (std::size_t i = 0; i < block.assignments.size(); ++i)
          if (block.assignments[i] == r) ++existing[i];
      }
      if (k == 0)
        throw InternalError("no prior row is defined on " + to_string(v) +
                            " despite a processed superset");
      BigInt p = block.size;
      BigInt added_total = 0;
      for (std::size_t i = 0; i < block.assignments.size(); ++i) {
        BigInt fresh = block.counts[i] * k - existing[i];
        if (fresh < 0 || fresh > k * (p - 1))
          throw InternalError("gluing count " + fresh.str() + " for " +
                              to_string(block.assignments[i]) + " outside [0, k(p-1)]");
        added_total += fresh;
        for (BigInt c = 0; c < fresh; ++c) rows.push_back(block.assignments[i]);
      }
      if (added_total != k * (p - 1))
        throw InternalError("gluing counts sum to " + added_total.str() + ", expected k(p-1)");
    }

    // Stage invariants: every processed support still has rows, and its
    // assignment frequencies match the witness exactly.
    done.push_back(v);
    QuantumTeam current(rows);
    for (const SymbolSet& w : done) {
      if (current.omega(w).empty())
        throw InternalError("processed support " + to_string(w) + " lost all rows");
      const Block& wb = blocks.at(w);
      for (std::size_t i = 0; i < wb.assignments.size(); ++i)
        if (current.probability(w, wb.assignments[i]) != wb.probs[i])
          throw InternalError("stage frequencies on " + to_string(w) +
                              " deviate from the witness");
    }
  }

  QuantumTeam team(std::move(rows));
  // Every component the witness values must have matching expectation.
  for (const auto& [comp, value] : values) {
    if (!supports.count(comp.support())) continue;
    if (team.expectation(comp.support(), comp.formula()) != value)
      throw InternalError("synthesized team misses the witness value of " + comp.to_string());
  }
  return team;
}

namespace {

std::optional<QuantumTeam> satisfiable_impl(const QtlFormula& alpha, const DecideLimits& limits,
                                            SearchStats* stats) {
  std::set<SymbolSet> supports = support(alpha);
  if (supports.empty()) {
    // No atoms: the formula is a boolean combination of `true`.
    QuantumTeam trivial(std::vector<TotalAssignment>{TotalAssignment::of({{0, true}})});
    return satisfies(trivial, alpha) ? std::optional<QuantumTeam>(trivial) : std::nullopt;
  }
  QtlFormula delta = augment(alpha, limits);
  Search search(delta, limits, stats);
  std::optional<std::map<Component, Rational>> witness = search.run();
  if (!witness) return std::nullopt;
  QuantumTeam team = synthesize_team(*witness, supports);
  if (!satisfies(team, alpha))
    throw InternalError("synthesized team fails the formula it was built for");
  return team;
}

}  // namespace

std::optional<QuantumTeam> qtl_satisfiable(const QtlFormula& alpha, const DecideLimits& limits,
                                           SearchStats* stats) {
  return satisfiable_impl(alpha, limits, stats);
}

bool qtl_valid(const QtlFormula& alpha, const DecideLimits& limits, SearchStats* stats) {
  return !satisfiable_impl(QtlFormula::Not(alpha), limits, stats).has_value();
}

std::optional<QuantumTeam> ptl_satisfiable(const QtlFormula& alpha, const DecideLimits& limits,
                                           SearchStats* stats) {
  QtlFormula widened = classicalize(alpha);
  std::optional<QuantumTeam> team = satisfiable_impl(widened, limits, stats);
  if (team && !team->is_multi_team())
    throw InternalError("multi-team search produced a non-multi-team witness");
  if (team && !ptl_satisfies(*team, alpha))
    throw InternalError("multi-team witness fails the original formula");
  return team;
}

bool ptl_valid(const QtlFormula& alpha, const DecideLimits& limits, SearchStats* stats) {
  return !ptl_satisfiable(QtlFormula::Not(alpha), limits, stats).has_value();
}

DecisionResult decide(const QtlFormula& alpha, LogicMode mode, const DecideLimits& limits) {
  DecisionResult result{Verdict::Unsatisfiable, std::nullopt, std::nullopt, {}};
  auto sat = [&](const QtlFormula& f) {
    return mode == LogicMode::Qtl ? qtl_satisfiable(f, limits, &result.stats)
                                  : ptl_satisfiable(f, limits, &result.stats);
  };
  result.witness = sat(alpha);
  if (!result.witness) {
    result.verdict = Verdict::Unsatisfiable;
    return result;
  }
  result.counterexample = sat(QtlFormula::Not(alpha));
  result.verdict = result.counterexample ? Verdict::SatisfiableNotValid : Verdict::Valid;
  return result;
}

}  // namespace qtl
