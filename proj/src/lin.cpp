#include "qtl/lin.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <variant>

#include "qtl/error.hpp"

namespace qtl::lin {

bool LinConstraint::satisfied_by(const std::vector<Rational>& values) const {
  Rational total = 0;
  for (const auto& [var, a] : coeffs) total += a * values.at(var);
  return rel == Rel::Ge ? total >= bound : total > bound;
}

std::string LinConstraint::to_string() const {
  std::string out;
  bool first = true;
  for (const auto& [var, a] : coeffs) {
    if (!first) out += " + ";
    out += qtl::to_string(a) + "*x" + std::to_string(var);
    first = false;
  }
  if (first) out += "0";
  out += (rel == Rel::Ge ? " >= " : " > ") + qtl::to_string(bound);
  return out;
}

LinConstraint negate(const LinConstraint& c) {
  LinConstraint out;
  for (const auto& [var, a] : c.coeffs) out.coeffs.emplace(var, -a);
  out.bound = -c.bound;
  out.rel = c.rel == Rel::Ge ? Rel::Gt : Rel::Ge;
  return out;
}

void LinSystem::add(LinConstraint c) {
  for (auto it = c.coeffs.begin(); it != c.coeffs.end();) {
    if (it->first >= num_vars_)
      throw DomainError("constraint variable x" + std::to_string(it->first) + " out of range");
    if (it->second == 0)
      it = c.coeffs.erase(it);
    else
      ++it;
  }
  cons_.push_back(std::move(c));
}

void LinSystem::add_ge(std::map<VarId, Rational> coeffs, Rational bound) {
  add(LinConstraint{std::move(coeffs), Rel::Ge, std::move(bound)});
}

void LinSystem::add_gt(std::map<VarId, Rational> coeffs, Rational bound) {
  add(LinConstraint{std::move(coeffs), Rel::Gt, std::move(bound)});
}

void LinSystem::add_le(std::map<VarId, Rational> coeffs, Rational bound) {
  for (auto& [var, a] : coeffs) a = -a;
  add(LinConstraint{std::move(coeffs), Rel::Ge, -bound});
}

void LinSystem::add_lt(std::map<VarId, Rational> coeffs, Rational bound) {
  for (auto& [var, a] : coeffs) a = -a;
  add(LinConstraint{std::move(coeffs), Rel::Gt, -bound});
}

void LinSystem::add_eq(std::map<VarId, Rational> coeffs, Rational bound) {
  add_ge(coeffs, bound);
  add_le(std::move(coeffs), std::move(bound));
}

std::string LinSystem::to_string() const {
  std::string out;
  for (const LinConstraint& c : cons_) out += c.to_string() + "\n";
  return out;
}

namespace {

// Elimination record for back-substitution.
struct SubstStep {
  VarId var;
  std::map<VarId, Rational> expr;  // var = expr_const + sum(expr[x] * x)
  Rational expr_const;
};
struct FmStep {
  VarId var;
  std::vector<LinConstraint> parents;  // constraints mentioning var, pre-elimination
};
using Step = std::variant<SubstStep, FmStep>;

// Scales so the lowest-id coefficient has magnitude 1; positive multiple
// classes then coincide.
LinConstraint scaled(const LinConstraint& c) {
  LinConstraint out = c;
  if (out.coeffs.empty()) return out;
  Rational lead = abs(out.coeffs.begin()->second);
  for (auto& [var, a] : out.coeffs) a /= lead;
  out.bound /= lead;
  return out;
}

// true when the bound side of `a` implies that of `b` (same coefficients).
bool bound_implies(Rel rel_a, const Rational& bound_a, Rel rel_b, const Rational& bound_b) {
  if (bound_a > bound_b) return true;
  if (bound_a < bound_b) return false;
  return rel_a == Rel::Gt || rel_b == Rel::Ge;
}

class Solver {
 public:
  Solver(const LinSystem& system, FeasibleStats* stats)
      : num_vars_(system.num_vars()), stats_(stats) {
    for (const LinConstraint& c : system.constraints()) work_.push_back(scaled(c));
  }

  std::optional<std::vector<Rational>> run() {
    for (VarId v = 0; v < num_vars_; ++v) alive_.insert(v);
    while (true) {
      if (!normalize()) return std::nullopt;
      if (alive_.empty()) break;
      if (eliminate_equality()) continue;
      eliminate_fm();
    }
    return back_substitute();
  }

 private:
  // Drops tautologies and duplicates (keeping the strongest bound per
  // positive-multiple class); fails on contradictory constant constraints.
  bool normalize() {
    std::map<std::map<VarId, Rational>, std::pair<Rel, Rational>> best;
    for (LinConstraint& c : work_) {
      if (c.coeffs.empty()) {
        bool ok = c.rel == Rel::Ge ? 0 >= c.bound : 0 > c.bound;
        if (!ok) return false;
        continue;
      }
      auto [it, inserted] = best.emplace(c.coeffs, std::make_pair(c.rel, c.bound));
      if (!inserted && !bound_implies(it->second.first, it->second.second, c.rel, c.bound))
        it->second = {c.rel, c.bound};
    }
    work_.clear();
    for (auto& [coeffs, relbound] : best)
      work_.push_back(LinConstraint{coeffs, relbound.first, relbound.second});
    return true;
  }

  // Finds a complementary pair sum >= b, -sum >= -b and eliminates one
  // variable by substitution. Returns false when no pair exists.
  bool eliminate_equality() {
    std::map<std::map<VarId, Rational>, std::size_t> index;
    for (std::size_t i = 0; i < work_.size(); ++i) index.emplace(work_[i].coeffs, i);
    for (std::size_t i = 0; i < work_.size(); ++i) {
      const LinConstraint& c = work_[i];
      if (c.rel != Rel::Ge) continue;
      std::map<VarId, Rational> neg;
      for (const auto& [var, a] : c.coeffs) neg.emplace(var, -a);
      auto it = index.find(scaled(LinConstraint{neg, Rel::Ge, 0}).coeffs);
      if (it == index.end()) continue;
      const LinConstraint& d = work_[it->second];
      if (d.rel != Rel::Ge) continue;
      // d is a positive multiple of -c; the pair is an equality only when the
      // bounds match under the same scaling.
      Rational lead = abs(neg.begin()->second);
      if (d.bound != -c.bound / lead) continue;
      substitute(c);
      return true;
    }
    return false;
  }

  // Rewrites every constraint using var = expr derived from equality eq.
  void substitute(LinConstraint eq) {
    // Prefer a unit pivot for smaller numbers.
    auto pivot = eq.coeffs.begin();
    for (auto it = eq.coeffs.begin(); it != eq.coeffs.end(); ++it)
      if (abs(it->second) == 1) {
        pivot = it;
        break;
      }
    VarId var = pivot->first;
    Rational a = pivot->second;
    SubstStep step{var, {}, eq.bound / a};
    for (const auto& [v, b] : eq.coeffs)
      if (v != var) step.expr.emplace(v, -b / a);
    std::vector<LinConstraint> next;
    next.reserve(work_.size());
    for (const LinConstraint& c : work_) {
      auto it = c.coeffs.find(var);
      if (it == c.coeffs.end()) {
        next.push_back(c);
        continue;
      }
      LinConstraint r;
      r.rel = c.rel;
      Rational k = it->second;
      r.bound = c.bound - k * step.expr_const;
      for (const auto& [v, b] : c.coeffs)
        if (v != var) r.coeffs[v] = b;
      for (const auto& [v, b] : step.expr) {
        Rational nb = r.coeffs[v] + k * b;
        if (nb == 0)
          r.coeffs.erase(v);
        else
          r.coeffs[v] = nb;
      }
      for (auto jt = r.coeffs.begin(); jt != r.coeffs.end();)
        jt = jt->second == 0 ? r.coeffs.erase(jt) : std::next(jt);
      next.push_back(scaled(r));
    }
    work_ = std::move(next);
    steps_.push_back(step);
    alive_.erase(var);
    if (stats_) ++stats_->eliminations;
  }

  // Fourier-Motzkin elimination of the variable with the fewest pairings.
  void eliminate_fm() {
    VarId best_var = *alive_.begin();
    std::size_t best_cost = SIZE_MAX;
    for (VarId v : alive_) {
      std::size_t pos = 0, neg = 0;
      for (const LinConstraint& c : work_) {
        auto it = c.coeffs.find(v);
        if (it == c.coeffs.end()) continue;
        (it->second > 0 ? pos : neg)++;
      }
      std::size_t cost = pos * neg;
      if (cost < best_cost) {
        best_cost = cost;
        best_var = v;
      }
    }
    VarId var = best_var;

    std::vector<LinConstraint> lowers, uppers, rest;
    FmStep step{var, {}};
    for (LinConstraint& c : work_) {
      auto it = c.coeffs.find(var);
      if (it == c.coeffs.end()) {
        rest.push_back(std::move(c));
      } else {
        step.parents.push_back(c);
        (it->second > 0 ? lowers : uppers).push_back(std::move(c));
      }
    }
    // A one-sided variable never blocks feasibility; its constraints vanish
    // and back-substitution picks a large enough value.
    if (!lowers.empty() && !uppers.empty()) {
      for (const LinConstraint& lo : lowers) {
        Rational al = lo.coeffs.at(var);
        for (const LinConstraint& up : uppers) {
          Rational au = up.coeffs.at(var);  // negative
          // al*|au|*x and au*al*x cancel: combine lo*|au| + up*al.
          LinConstraint c;
          c.rel = (lo.rel == Rel::Gt || up.rel == Rel::Gt) ? Rel::Gt : Rel::Ge;
          c.bound = lo.bound * (-au) + up.bound * al;
          for (const auto& [v, b] : lo.coeffs)
            if (v != var) c.coeffs[v] = b * (-au);
          for (const auto& [v, b] : up.coeffs) {
            if (v == var) continue;
            Rational nb = c.coeffs[v] + b * al;
            if (nb == 0)
              c.coeffs.erase(v);
            else
              c.coeffs[v] = nb;
          }
          for (auto jt = c.coeffs.begin(); jt != c.coeffs.end();)
            jt = jt->second == 0 ? c.coeffs.erase(jt) : std::next(jt);
          rest.push_back(scaled(c));
        }
      }
    }
    work_ = std::move(rest);
    steps_.push_back(std::move(step));
    alive_.erase(var);
    if (stats_) ++stats_->eliminations;
  }

  std::optional<std::vector<Rational>> back_substitute() {
    std::vector<Rational> values(num_vars_, Rational(0));
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      if (const SubstStep* s = std::get_if<SubstStep>(&*it)) {
        Rational v = s->expr_const;
        for (const auto& [var, a] : s->expr) v += a * values[var];
        values[s->var] = v;
        continue;
      }
      const FmStep& s = std::get<FmStep>(*it);
      std::optional<Rational> lo, hi;
      bool lo_strict = false, hi_strict = false;
      for (const LinConstraint& c : s.parents) {
        Rational a = c.coeffs.at(s.var);
        Rational residual = c.bound;
        for (const auto& [var, b] : c.coeffs)
          if (var != s.var) residual -= b * values[var];
        Rational limit = residual / a;
        bool strict = c.rel == Rel::Gt;
        if (a > 0) {  // x >= limit
          if (!lo || limit > *lo) {
            lo = limit;
            lo_strict = strict;
          } else if (limit == *lo) {
            lo_strict = lo_strict || strict;
          }
        } else {  // x <= limit
          if (!hi || limit < *hi) {
            hi = limit;
            hi_strict = strict;
          } else if (limit == *hi) {
            hi_strict = hi_strict || strict;
          }
        }
      }
      if (lo && hi && (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict))))
        throw InternalError("empty interval during back-substitution");
      values[s.var] = simplest_rational(lo, lo_strict, hi, hi_strict);
    }
    return values;
  }

  std::size_t num_vars_;
  FeasibleStats* stats_;
  std::vector<LinConstraint> work_;
  std::set<VarId> alive_;
  std::vector<Step> steps_;
};

}  // namespace

std::optional<std::vector<Rational>> LinSystem::feasible(FeasibleStats* stats) const {
  std::optional<std::vector<Rational>> witness = Solver(*this, stats).run();
  if (witness) {
    for (const LinConstraint& c : cons_)
      if (!c.satisfied_by(*witness))
        throw InternalError("feasibility witness fails " + c.to_string());
  }
  return witness;
}

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
  return q;
}

BigInt floor_rat(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

Rational simplest_rational(const std::optional<Rational>& lo, bool lo_strict,
                           const std::optional<Rational>& hi, bool hi_strict) {
  if (!lo && !hi) return 0;
  if (lo && !hi) {
    if (*lo < 0 || (*lo == 0 && !lo_strict)) return 0;
    BigInt z = floor_rat(*lo) + 1;
    if (is_integer(*lo) && !lo_strict) z = numerator(*lo);
    return Rational(z);
  }
  if (hi && !lo) {
    if (*hi > 0 || (*hi == 0 && !hi_strict)) return 0;
    BigInt z = -(floor_div(-numerator(*hi), denominator(*hi)) + 1);
    if (is_integer(*hi) && !hi_strict) z = numerator(*hi);
    return Rational(z);
  }
  if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))
    throw InternalError("simplest_rational on an empty interval");
  if (*lo == *hi) return *lo;
  bool zero_ok = (*lo < 0 || (*lo == 0 && !lo_strict)) && (*hi > 0 || (*hi == 0 && !hi_strict));
  if (zero_ok) return 0;
  if (*hi <= 0) return -simplest_rational(-*hi, hi_strict, -*lo, lo_strict);
  // 0 <= lo < hi from here on.
  BigInt fl = floor_rat(*lo);
  Rational cand = (is_integer(*lo) && !lo_strict) ? *lo : Rational(fl + 1);
  if (cand < *hi || (cand == *hi && !hi_strict)) return cand;
  // No integer fits: the interval sits inside (fl, fl+1). Continue on the
  // reciprocal of the fractional part.
  Rational lo_frac = *lo - Rational(fl);
  Rational hi_frac = *hi - Rational(fl);
  std::optional<Rational> inner_hi;
  bool inner_hi_strict = lo_strict;
  if (lo_frac != 0) inner_hi = 1 / lo_frac;
  Rational inner = simplest_rational(1 / hi_frac, hi_strict, inner_hi, inner_hi_strict);
  return Rational(fl) + 1 / inner;
}

}  // namespace qtl::lin
