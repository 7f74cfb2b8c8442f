#include "qtl/prop.hpp"

#include <algorithm>
#include <utility>

namespace qtl {

std::string to_string(PropSymbol s) { return "p" + std::to_string(s.index); }

std::string to_string(const SymbolSet& set) {
  std::string out = "{";
  bool first = true;
  for (PropSymbol s : set) {
    if (!first) out += ",";
    out += to_string(s);
    first = false;
  }
  return out + "}";
}

struct PropFormula::Node {
  Kind kind;
  PropSymbol symbol;  // Kind::Symbol
  std::shared_ptr<const Node> a, b;
};

PropFormula PropFormula::Sym(PropSymbol s) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Symbol, s, nullptr, nullptr}));
}

PropFormula PropFormula::Not(PropFormula f) {
  return PropFormula(
      std::make_shared<const Node>(Node{Kind::Not, {}, std::move(f.node_), nullptr}));
}

PropFormula PropFormula::And(PropFormula a, PropFormula b) {
  return PropFormula(
      std::make_shared<const Node>(Node{Kind::And, {}, std::move(a.node_), std::move(b.node_)}));
}

PropFormula PropFormula::Or(PropFormula a, PropFormula b) {
  return PropFormula(
      std::make_shared<const Node>(Node{Kind::Or, {}, std::move(a.node_), std::move(b.node_)}));
}

PropFormula PropFormula::Implies(PropFormula a, PropFormula b) {
  return PropFormula(std::make_shared<const Node>(
      Node{Kind::Implies, {}, std::move(a.node_), std::move(b.node_)}));
}

PropFormula PropFormula::Iff(PropFormula a, PropFormula b) {
  return PropFormula(
      std::make_shared<const Node>(Node{Kind::Iff, {}, std::move(a.node_), std::move(b.node_)}));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }

PropSymbol PropFormula::symbol() const {
  if (node_->kind != Kind::Symbol) throw InternalError("symbol() on non-symbol node");
  return node_->symbol;
}

PropFormula PropFormula::operand() const {
  if (node_->kind != Kind::Not) throw InternalError("operand() on non-negation node");
  return PropFormula(node_->a);
}

PropFormula PropFormula::left() const {
  if (node_->kind == Kind::Symbol || node_->kind == Kind::Not)
    throw InternalError("left() on non-binary node");
  return PropFormula(node_->a);
}

PropFormula PropFormula::right() const {
  if (node_->kind == Kind::Symbol || node_->kind == Kind::Not)
    throw InternalError("right() on non-binary node");
  return PropFormula(node_->b);
}

namespace {

void collect_vars(const PropFormula& f, SymbolSet& out) {
  switch (f.kind()) {
    case PropFormula::Kind::Symbol:
      out.insert(f.symbol());
      return;
    case PropFormula::Kind::Not:
      collect_vars(f.operand(), out);
      return;
    default:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
      return;
  }
}

// Precedence levels for printing: higher binds tighter.
int precedence(PropFormula::Kind k) {
  switch (k) {
    case PropFormula::Kind::Symbol: return 6;
    case PropFormula::Kind::Not: return 5;
    case PropFormula::Kind::And: return 4;
    case PropFormula::Kind::Or: return 3;
    case PropFormula::Kind::Implies: return 2;
    case PropFormula::Kind::Iff: return 1;
  }
  return 0;
}

const char* op_token(PropFormula::Kind k) {
  switch (k) {
    case PropFormula::Kind::And: return " & ";
    case PropFormula::Kind::Or: return " | ";
    case PropFormula::Kind::Implies: return " -> ";
    case PropFormula::Kind::Iff: return " <-> ";
    default: return "";
  }
}

void print(const PropFormula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f.kind()) {
    case PropFormula::Kind::Symbol:
      out += to_string(f.symbol());
      break;
    case PropFormula::Kind::Not:
      out += "!";
      print(f.operand(), precedence(PropFormula::Kind::Not), out);
      break;
    case PropFormula::Kind::Implies:
      // Right-associative: the left argument needs strictly higher precedence.
      print(f.left(), prec + 1, out);
      out += op_token(f.kind());
      print(f.right(), prec, out);
      break;
    default:
      // And, Or, Iff parse left-associative.
      print(f.left(), prec, out);
      out += op_token(f.kind());
      print(f.right(), prec + 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

SymbolSet PropFormula::variables() const {
  SymbolSet out;
  collect_vars(*this, out);
  return out;
}

std::string PropFormula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

int PropFormula::compare(const PropFormula& other) const {
  if (node_ == other.node_) return 0;
  if (node_->kind != other.node_->kind)
    return static_cast<int>(node_->kind) < static_cast<int>(other.node_->kind) ? -1 : 1;
  switch (node_->kind) {
    case Kind::Symbol:
      if (node_->symbol == other.node_->symbol) return 0;
      return node_->symbol < other.node_->symbol ? -1 : 1;
    case Kind::Not:
      return operand().compare(other.operand());
    default: {
      int c = left().compare(other.left());
      if (c != 0) return c;
      return right().compare(other.right());
    }
  }
}

PropFormula conjoin(const std::vector<PropFormula>& fs) {
  if (fs.empty()) throw DomainError("conjoin: empty formula list");
  PropFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = PropFormula::And(acc, fs[i]);
  return acc;
}

TotalAssignment TotalAssignment::of(std::initializer_list<std::pair<unsigned, bool>> bits) {
  std::map<PropSymbol, bool> values;
  for (auto [index, bit] : bits) values[PropSymbol{index}] = bit;
  return TotalAssignment(std::move(values));
}

SymbolSet TotalAssignment::domain() const {
  SymbolSet out;
  for (const auto& [sym, bit] : values_) out.insert(sym);
  return out;
}

bool TotalAssignment::value(PropSymbol s) const {
  auto it = values_.find(s);
  if (it == values_.end())
    throw DomainError("assignment has no value for " + qtl::to_string(s));
  return it->second;
}

TotalAssignment TotalAssignment::restricted_to(const SymbolSet& u) const {
  std::map<PropSymbol, bool> out;
  for (PropSymbol s : u) {
    auto it = values_.find(s);
    if (it == values_.end())
      throw DomainError("restriction target " + qtl::to_string(s) + " outside assignment domain");
    out.emplace(s, it->second);
  }
  return TotalAssignment(std::move(out));
}

std::string to_string(const TotalAssignment& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [sym, bit] : s.values()) {
    if (!first) out += ",";
    out += to_string(sym) + ":" + (bit ? "1" : "0");
    first = false;
  }
  return out + "}";
}

bool eval(const PropFormula& f, const TotalAssignment& s) {
  switch (f.kind()) {
    case PropFormula::Kind::Symbol:
      return s.value(f.symbol());
    case PropFormula::Kind::Not:
      return !eval(f.operand(), s);
    case PropFormula::Kind::And:
      return eval(f.left(), s) && eval(f.right(), s);
    case PropFormula::Kind::Or:
      return eval(f.left(), s) || eval(f.right(), s);
    case PropFormula::Kind::Implies:
      return !eval(f.left(), s) || eval(f.right(), s);
    case PropFormula::Kind::Iff:
      return eval(f.left(), s) == eval(f.right(), s);
  }
  throw InternalError("eval: unknown node kind");
}

PropFormula minterm(const TotalAssignment& s) {
  if (s.empty()) throw DomainError("minterm of an empty assignment");
  std::vector<PropFormula> literals;
  literals.reserve(s.size());
  for (const auto& [sym, bit] : s.values()) {
    PropFormula lit = PropFormula::Sym(sym);
    literals.push_back(bit ? lit : PropFormula::Not(lit));
  }
  return conjoin(literals);
}

std::vector<TotalAssignment> all_assignments(const SymbolSet& symbols) {
  if (symbols.size() > kMaxEnumerationSymbols)
    throw ResourceError("assignment enumeration over " + std::to_string(symbols.size()) +
                        " symbols exceeds the cap of " + std::to_string(kMaxEnumerationSymbols));
  std::vector<PropSymbol> order(symbols.begin(), symbols.end());
  std::size_t n = order.size();
  std::vector<TotalAssignment> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = (std::uint64_t{1} << n); mask-- > 0;) {
    std::map<PropSymbol, bool> values;
    for (std::size_t i = 0; i < n; ++i)
      values.emplace(order[i], (mask >> (n - 1 - i)) & 1);
    out.emplace_back(std::move(values));
  }
  return out;
}

namespace {

// Streams assignments one by one so that 2^n never has to fit in memory.
// Stops early and returns true when pred holds for some assignment.
template <typename Pred>
bool exists_assignment(const SymbolSet& symbols, Pred&& pred) {
  if (symbols.size() > kMaxEnumerationSymbols)
    throw ResourceError("assignment enumeration over " + std::to_string(symbols.size()) +
                        " symbols exceeds the cap of " + std::to_string(kMaxEnumerationSymbols));
  std::vector<PropSymbol> order(symbols.begin(), symbols.end());
  std::size_t n = order.size();
  for (std::uint64_t mask = (std::uint64_t{1} << n); mask-- > 0;) {
    std::map<PropSymbol, bool> values;
    for (std::size_t i = 0; i < n; ++i)
      values.emplace(order[i], (mask >> (n - 1 - i)) & 1);
    if (pred(TotalAssignment(std::move(values)))) return true;
  }
  return false;
}

}  // namespace

bool is_contradictory(const PropFormula& f) {
  return !exists_assignment(f.variables(),
                            [&](const TotalAssignment& s) { return eval(f, s); });
}

bool prop_equiv(const PropFormula& f, const PropFormula& g) {
  SymbolSet vars = f.variables();
  SymbolSet gvars = g.variables();
  vars.insert(gvars.begin(), gvars.end());
  return !exists_assignment(
      vars, [&](const TotalAssignment& s) { return eval(f, s) != eval(g, s); });
}

}  // namespace qtl
