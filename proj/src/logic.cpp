#include "qtl/logic.hpp"

#include <algorithm>
#include <map>

#include "qtl/error.hpp"

namespace qtl {

Component::Component(PropFormula formula, SymbolSet support)
    : formula_(std::move(formula)), support_(std::move(support)) {
  if (support_.empty()) throw SupportError("component support must be nonempty");
  SymbolSet vars = formula_.variables();
  if (!std::includes(support_.begin(), support_.end(), vars.begin(), vars.end()))
    throw SupportError("formula variables " + qtl::to_string(vars) + " not within support " +
                       qtl::to_string(support_));
}

Component Component::normal(PropFormula formula) {
  SymbolSet vars = formula.variables();
  return Component(std::move(formula), std::move(vars));
}

int Component::compare(const Component& o) const {
  if (support_ != o.support_) return support_ < o.support_ ? -1 : 1;
  return formula_.compare(o.formula_);
}

std::string Component::to_string() const {
  return "[" + formula_.to_string() + "; " + qtl::to_string(support_) + "]";
}

LinAtom LinAtom::geq(std::vector<Term> terms, BigInt bound) {
  std::map<Component, BigInt> merged;
  for (auto& [coeff, comp] : terms) {
    auto [it, inserted] = merged.emplace(std::move(comp), coeff);
    if (!inserted) it->second += coeff;
  }
  std::vector<Term> canon;
  canon.reserve(merged.size());
  for (auto& [comp, coeff] : merged)
    if (coeff != 0) canon.emplace_back(coeff, comp);
  if (canon.empty()) throw DomainError("linear atom with no nonzero term");
  return LinAtom(std::move(canon), std::move(bound));
}

int LinAtom::compare(const LinAtom& o) const {
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    int c = terms_[i].second.compare(o.terms_[i].second);
    if (c != 0) return c;
    if (terms_[i].first != o.terms_[i].first) return terms_[i].first < o.terms_[i].first ? -1 : 1;
  }
  if (bound_ != o.bound_) return bound_ < o.bound_ ? -1 : 1;
  return 0;
}

std::string LinAtom::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [coeff, comp] = terms_[i];
    BigInt mag = abs(coeff);
    if (i == 0) {
      if (coeff < 0) out += "-";
    } else {
      out += coeff < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.str() + "*";
    out += comp.to_string();
  }
  out += " >= " + bound_.str();
  return out;
}

struct QtlFormula::Node {
  Kind kind;
  std::shared_ptr<const LinAtom> atom;  // Kind::Atom
  std::shared_ptr<const Node> a, b;
};

QtlFormula QtlFormula::True() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True, nullptr, nullptr, nullptr});
  return QtlFormula(node);
}

QtlFormula QtlFormula::Atom(LinAtom atom) {
  return QtlFormula(std::make_shared<const Node>(
      Node{Kind::Atom, std::make_shared<const LinAtom>(std::move(atom)), nullptr, nullptr}));
}

QtlFormula QtlFormula::Not(QtlFormula f) {
  return QtlFormula(
      std::make_shared<const Node>(Node{Kind::Not, nullptr, std::move(f.node_), nullptr}));
}

QtlFormula QtlFormula::And(QtlFormula a, QtlFormula b) {
  return QtlFormula(std::make_shared<const Node>(
      Node{Kind::And, nullptr, std::move(a.node_), std::move(b.node_)}));
}

QtlFormula QtlFormula::Or(QtlFormula a, QtlFormula b) {
  return Not(And(Not(std::move(a)), Not(std::move(b))));
}

QtlFormula QtlFormula::Implies(QtlFormula a, QtlFormula b) {
  return Not(And(std::move(a), Not(std::move(b))));
}

QtlFormula QtlFormula::and_all(const std::vector<QtlFormula>& fs) {
  if (fs.empty()) return True();
  QtlFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

QtlFormula::Kind QtlFormula::kind() const { return node_->kind; }

const LinAtom& QtlFormula::atom() const {
  if (node_->kind != Kind::Atom) throw InternalError("atom() on non-atom node");
  return *node_->atom;
}

QtlFormula QtlFormula::operand() const {
  if (node_->kind != Kind::Not) throw InternalError("operand() on non-negation node");
  return QtlFormula(node_->a);
}

QtlFormula QtlFormula::left() const {
  if (node_->kind != Kind::And) throw InternalError("left() on non-conjunction node");
  return QtlFormula(node_->a);
}

QtlFormula QtlFormula::right() const {
  if (node_->kind != Kind::And) throw InternalError("right() on non-conjunction node");
  return QtlFormula(node_->b);
}

int QtlFormula::compare(const QtlFormula& o) const {
  if (node_ == o.node_) return 0;
  if (node_->kind != o.node_->kind)
    return static_cast<int>(node_->kind) < static_cast<int>(o.node_->kind) ? -1 : 1;
  switch (node_->kind) {
    case Kind::True:
      return 0;
    case Kind::Atom:
      return node_->atom->compare(*o.node_->atom);
    case Kind::Not:
      return operand().compare(o.operand());
    case Kind::And: {
      int c = left().compare(o.left());
      if (c != 0) return c;
      return right().compare(o.right());
    }
  }
  throw InternalError("compare: unknown node kind");
}

std::string QtlFormula::to_string() const {
  switch (kind()) {
    case Kind::True:
      return "true";
    case Kind::Atom:
      return atom().to_string();
    case Kind::Not:
      return "!(" + operand().to_string() + ")";
    case Kind::And: {
      auto wrap = [](const QtlFormula& f) {
        return f.kind() == Kind::Atom ? "(" + f.to_string() + ")" : f.to_string();
      };
      return wrap(left()) + " & " + wrap(right());
    }
  }
  throw InternalError("to_string: unknown node kind");
}

namespace {

template <typename Fn>
void for_each_atom(const QtlFormula& f, Fn&& fn) {
  switch (f.kind()) {
    case QtlFormula::Kind::True:
      return;
    case QtlFormula::Kind::Atom:
      fn(f.atom());
      return;
    case QtlFormula::Kind::Not:
      for_each_atom(f.operand(), fn);
      return;
    case QtlFormula::Kind::And:
      for_each_atom(f.left(), fn);
      for_each_atom(f.right(), fn);
      return;
  }
}

}  // namespace

std::set<Component> elementary_components(const QtlFormula& f) {
  std::set<Component> out;
  for_each_atom(f, [&](const LinAtom& atom) {
    for (const auto& [coeff, comp] : atom.terms()) out.insert(comp);
  });
  return out;
}

std::set<SymbolSet> support(const QtlFormula& f) {
  std::set<SymbolSet> out;
  for_each_atom(f, [&](const LinAtom& atom) {
    for (const auto& [coeff, comp] : atom.terms()) out.insert(comp.support());
  });
  return out;
}

bool is_classical(const QtlFormula& f) { return support(f).size() <= 1; }

bool is_normal(const QtlFormula& f) {
  for (const Component& c : elementary_components(f))
    if (!c.is_normal()) return false;
  return true;
}

Rational atom_value(const QuantumTeam& team, const LinAtom& atom) {
  Rational total = 0;
  for (const auto& [coeff, comp] : atom.terms())
    total += Rational(coeff) * team.expectation(comp.support(), comp.formula());
  return total;
}

namespace {

bool satisfies_unchecked(const QuantumTeam& team, const QtlFormula& f) {
  switch (f.kind()) {
    case QtlFormula::Kind::True:
      return true;
    case QtlFormula::Kind::Atom:
      return atom_value(team, f.atom()) >= Rational(f.atom().bound());
    case QtlFormula::Kind::Not:
      return !satisfies_unchecked(team, f.operand());
    case QtlFormula::Kind::And:
      return satisfies_unchecked(team, f.left()) && satisfies_unchecked(team, f.right());
  }
  throw InternalError("satisfies: unknown node kind");
}

}  // namespace

bool satisfies(const QuantumTeam& team, const QtlFormula& f) {
  std::set<SymbolSet> sp = support(f);
  if (!cover_leq(sp, team.support()))
    throw SupportError("formula support is not dominated by the team support");
  return satisfies_unchecked(team, f);
}

namespace {

QtlFormula widen_to(const QtlFormula& f, const SymbolSet& base) {
  switch (f.kind()) {
    case QtlFormula::Kind::True:
      return f;
    case QtlFormula::Kind::Not:
      return QtlFormula::Not(widen_to(f.operand(), base));
    case QtlFormula::Kind::And:
      return QtlFormula::And(widen_to(f.left(), base), widen_to(f.right(), base));
    case QtlFormula::Kind::Atom: {
      std::vector<LinAtom::Term> terms;
      for (const auto& [coeff, comp] : f.atom().terms())
        terms.emplace_back(coeff, Component(comp.formula(), base));
      return QtlFormula::Atom(LinAtom::geq(std::move(terms), f.atom().bound()));
    }
  }
  throw InternalError("widen_to: unknown node kind");
}

}  // namespace

QtlFormula classicalize(const QtlFormula& f) {
  SymbolSet base;
  for (const Component& c : elementary_components(f))
    base.insert(c.support().begin(), c.support().end());
  if (base.empty()) return f;  // no atoms at all
  return widen_to(f, base);
}

bool ptl_satisfies(const QuantumTeam& team, const QtlFormula& f) {
  if (!team.is_multi_team())
    throw NotMultiTeamError("multi-team semantics applied to a team with varying row domains");
  SymbolSet dom = team.domain();
  for (const Component& c : elementary_components(f)) {
    SymbolSet vars = c.formula().variables();
    if (!std::includes(dom.begin(), dom.end(), vars.begin(), vars.end()))
      throw DomainError("formula mentions symbols outside the team domain " + to_string(dom));
  }
  // Every expectation ranges over the whole team.
  struct Evaluator {
    const QuantumTeam& team;
    const SymbolSet& dom;
    bool run(const QtlFormula& g) const {
      switch (g.kind()) {
        case QtlFormula::Kind::True:
          return true;
        case QtlFormula::Kind::Not:
          return !run(g.operand());
        case QtlFormula::Kind::And:
          return run(g.left()) && run(g.right());
        case QtlFormula::Kind::Atom: {
          Rational total = 0;
          for (const auto& [coeff, comp] : g.atom().terms())
            total += Rational(coeff) * team.expectation(dom, comp.formula());
          return total >= Rational(g.atom().bound());
        }
      }
      throw InternalError("ptl_satisfies: unknown node kind");
    }
  };
  return Evaluator{team, dom}.run(f);
}

}  // namespace qtl
