#include "qtl/parser.hpp"

#include <cctype>
#include <optional>

#include "qtl/error.hpp"
#include "qtl/rational.hpp"

namespace qtl {

namespace {

enum class Tok {
  End, Ident, Int,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Semicolon, Plus, Minus, Star, Slash,
  Amp, Pipe, Bang, Arrow, DArrow,
  Ge, Le, Eq, Lt, Gt,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      current_ = {Tok::Ident, std::string(text_.substr(pos_, end - pos_)), start};
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      current_ = {Tok::Int, std::string(text_.substr(pos_, end - pos_)), start};
      pos_ = end;
      return;
    }
    auto match = [&](std::string_view s) {
      return text_.substr(pos_).substr(0, s.size()) == s;
    };
    if (match("<->")) { pos_ += 3; current_ = {Tok::DArrow, "<->", start}; return; }
    if (match("->")) { pos_ += 2; current_ = {Tok::Arrow, "->", start}; return; }
    if (match(">=")) { pos_ += 2; current_ = {Tok::Ge, ">=", start}; return; }
    if (match("<=")) { pos_ += 2; current_ = {Tok::Le, "<=", start}; return; }
    switch (c) {
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '[': single(Tok::LBracket); return;
      case ']': single(Tok::RBracket); return;
      case '{': single(Tok::LBrace); return;
      case '}': single(Tok::RBrace); return;
      case ',': single(Tok::Comma); return;
      case ';': single(Tok::Semicolon); return;
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '*': single(Tok::Star); return;
      case '/': single(Tok::Slash); return;
      case '&': single(Tok::Amp); return;
      case '|': single(Tok::Pipe); return;
      case '!': single(Tok::Bang); return;
      case '=': single(Tok::Eq); return;
      case '<': single(Tok::Lt); return;
      case '>': single(Tok::Gt); return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

std::optional<PropSymbol> as_symbol(const std::string& ident) {
  if (ident.size() < 2 || ident[0] != 'p') return std::nullopt;
  for (std::size_t i = 1; i < ident.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return std::nullopt;
  return PropSymbol{static_cast<unsigned>(std::stoul(ident.substr(1)))};
}

// --- propositional formulas ------------------------------------------------

class PropParser {
 public:
  PropParser(Lexer& lex, const Bindings& bindings) : lex_(lex), bindings_(bindings) {}

  PropFormula parse() { return parse_iff(); }

 private:
  PropFormula parse_iff() {
    PropFormula f = parse_implies();
    while (lex_.peek().kind == Tok::DArrow) {
      lex_.take();
      f = PropFormula::Iff(f, parse_implies());
    }
    return f;
  }

  PropFormula parse_implies() {
    PropFormula f = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return PropFormula::Implies(f, parse_implies());  // right-associative
    }
    return f;
  }

  PropFormula parse_or() {
    PropFormula f = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = PropFormula::Or(f, parse_and());
    }
    return f;
  }

  PropFormula parse_and() {
    PropFormula f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = PropFormula::And(f, parse_unary());
    }
    return f;
  }

  PropFormula parse_unary() {
    if (lex_.peek().kind == Tok::Bang) {
      lex_.take();
      return PropFormula::Not(parse_unary());
    }
    return parse_atom();
  }

  PropFormula parse_atom() {
    Token t = lex_.take();
    if (t.kind == Tok::LParen) {
      PropFormula f = parse_iff();
      Token close = lex_.take();
      if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (auto sym = as_symbol(t.text)) return PropFormula::Sym(*sym);
      auto it = bindings_.find(t.text);
      if (it != bindings_.end()) return it->second;
      throw ParseError("unknown name '" + t.text + "'", t.pos);
    }
    throw ParseError("expected a proposition symbol, name, '!' or '('", t.pos);
  }

  Lexer& lex_;
  const Bindings& bindings_;
};

// --- QTL formulas -----------------------------------------------------------

// One side of a comparison: rational coefficients per component plus a
// rational constant.
struct LinSide {
  std::map<Component, Rational> coeffs;
  Rational constant = 0;
};

class QtlParser {
 public:
  QtlParser(Lexer& lex, const Bindings& bindings) : lex_(lex), bindings_(bindings) {}

  QtlFormula parse() { return parse_iff(); }

 private:
  QtlFormula parse_iff() {
    QtlFormula f = parse_implies();
    while (lex_.peek().kind == Tok::DArrow) {
      lex_.take();
      QtlFormula g = parse_implies();
      f = QtlFormula::And(QtlFormula::Implies(f, g), QtlFormula::Implies(g, f));
    }
    return f;
  }

  QtlFormula parse_implies() {
    QtlFormula f = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return QtlFormula::Implies(f, parse_implies());
    }
    return f;
  }

  QtlFormula parse_or() {
    QtlFormula f = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = QtlFormula::Or(f, parse_and());
    }
    return f;
  }

  QtlFormula parse_and() {
    QtlFormula f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = QtlFormula::And(f, parse_unary());
    }
    return f;
  }

  QtlFormula parse_unary() {
    if (lex_.peek().kind == Tok::Bang) {
      lex_.take();
      return QtlFormula::Not(parse_unary());
    }
    return parse_primary();
  }

  QtlFormula parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      QtlFormula f = parse_iff();
      Token close = lex_.take();
      if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
      return f;
    }
    if (t.kind == Tok::Ident && t.text == "true") {
      lex_.take();
      return QtlFormula::True();
    }
    if (t.kind == Tok::Ident && t.text == "false") {
      lex_.take();
      return QtlFormula::Not(QtlFormula::True());
    }
    return parse_atom();
  }

  QtlFormula parse_atom() {
    LinSide lhs = parse_linexpr();
    Token cmp = lex_.take();
    switch (cmp.kind) {
      case Tok::Ge:
      case Tok::Le:
      case Tok::Eq:
      case Tok::Lt:
      case Tok::Gt:
        break;
      default:
        throw ParseError("expected a comparator (>=, <=, =, <, >)", cmp.pos);
    }
    LinSide rhs = parse_linexpr();
    return build_atom(std::move(lhs), cmp.kind, std::move(rhs));
  }

  // Normalizes lhs cmp rhs into >=-atoms with integer coefficients.
  QtlFormula build_atom(LinSide lhs, Tok cmp, LinSide rhs) {
    std::map<Component, Rational> coeffs = std::move(lhs.coeffs);
    for (const auto& [comp, c] : rhs.coeffs) coeffs[comp] -= c;
    Rational bound = rhs.constant - lhs.constant;
    // Clear denominators.
    BigInt mult = 1;
    for (const auto& [comp, c] : coeffs) mult = lcm(mult, denominator(c));
    mult = lcm(mult, denominator(bound));
    std::vector<LinAtom::Term> terms;
    for (const auto& [comp, c] : coeffs) {
      BigInt coeff = numerator(c * Rational(mult));
      if (coeff != 0) terms.emplace_back(coeff, comp);
    }
    BigInt c0 = numerator(bound * Rational(mult));
    if (terms.empty()) {
      // Constant comparison; fold to a truth value.
      bool truth;
      switch (cmp) {
        case Tok::Ge: truth = 0 >= c0; break;
        case Tok::Le: truth = 0 <= c0; break;
        case Tok::Eq: truth = 0 == c0; break;
        case Tok::Lt: truth = 0 < c0; break;
        case Tok::Gt: truth = 0 > c0; break;
        default: throw InternalError("build_atom: bad comparator");
      }
      return truth ? QtlFormula::True() : QtlFormula::Not(QtlFormula::True());
    }
    auto flipped = [&] {
      std::vector<LinAtom::Term> neg;
      neg.reserve(terms.size());
      for (const auto& [a, comp] : terms) neg.emplace_back(-a, comp);
      return neg;
    };
    switch (cmp) {
      case Tok::Ge:
        return QtlFormula::Atom(LinAtom::geq(std::move(terms), c0));
      case Tok::Le:
        return QtlFormula::Atom(LinAtom::geq(flipped(), -c0));
      case Tok::Eq:
        return QtlFormula::And(QtlFormula::Atom(LinAtom::geq(std::move(terms), c0)),
                               QtlFormula::Atom(LinAtom::geq(flipped(), -c0)));
      case Tok::Gt:
        return QtlFormula::Not(QtlFormula::Atom(LinAtom::geq(flipped(), -c0)));
      case Tok::Lt:
        return QtlFormula::Not(QtlFormula::Atom(LinAtom::geq(std::move(terms), c0)));
      default:
        throw InternalError("build_atom: bad comparator");
    }
  }

  LinSide parse_linexpr() {
    LinSide side;
    bool negative = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      negative = true;
    }
    parse_term(side, negative);
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.take().kind == Tok::Minus;
      parse_term(side, minus);
    }
    return side;
  }

  void parse_term(LinSide& side, bool negative) {
    const Token& t = lex_.peek();
    Rational sign = negative ? -1 : 1;
    if (t.kind == Tok::Int) {
      Rational value = parse_number();
      if (lex_.peek().kind == Tok::Star) {
        lex_.take();
        Component comp = parse_component();
        side.coeffs[comp] += sign * value;
      } else {
        side.constant += sign * value;
      }
      return;
    }
    Component comp = parse_component();
    side.coeffs[comp] += sign;
  }

  Rational parse_number() {
    Token t = lex_.take();
    if (t.kind != Tok::Int) throw ParseError("expected a number", t.pos);
    BigInt num(t.text);
    if (lex_.peek().kind == Tok::Slash) {
      lex_.take();
      Token d = lex_.take();
      if (d.kind != Tok::Int) throw ParseError("expected a denominator", d.pos);
      BigInt den(d.text);
      if (den == 0) throw ParseError("zero denominator", d.pos);
      return Rational(num, den);
    }
    return Rational(num);
  }

  Component parse_component() {
    Token t = lex_.take();
    if (t.kind == Tok::Ident) {
      if (as_symbol(t.text))
        throw ParseError("bare proposition symbols are not terms; write [" + t.text + "]", t.pos);
      auto it = bindings_.find(t.text);
      if (it == bindings_.end()) throw ParseError("unknown name '" + t.text + "'", t.pos);
      return Component::normal(it->second);
    }
    if (t.kind != Tok::LBracket)
      throw ParseError("expected a component '[...]', a name, or a number", t.pos);
    PropFormula f = PropParser(lex_, bindings_).parse();
    if (lex_.peek().kind == Tok::Semicolon) {
      lex_.take();
      SymbolSet support = parse_symbol_set();
      Token close = lex_.take();
      if (close.kind != Tok::RBracket) throw ParseError("expected ']'", close.pos);
      return Component(std::move(f), std::move(support));
    }
    Token close = lex_.take();
    if (close.kind != Tok::RBracket) throw ParseError("expected ']' or ';'", close.pos);
    return Component::normal(std::move(f));
  }

  SymbolSet parse_symbol_set() {
    Token open = lex_.take();
    if (open.kind != Tok::LBrace) throw ParseError("expected '{'", open.pos);
    SymbolSet out;
    while (true) {
      Token t = lex_.take();
      if (t.kind != Tok::Ident) throw ParseError("expected a proposition symbol", t.pos);
      auto sym = as_symbol(t.text);
      if (!sym) throw ParseError("expected p<digits>, got '" + t.text + "'", t.pos);
      out.insert(*sym);
      Token sep = lex_.take();
      if (sep.kind == Tok::RBrace) break;
      if (sep.kind != Tok::Comma) throw ParseError("expected ',' or '}'", sep.pos);
    }
    return out;
  }

  Lexer& lex_;
  const Bindings& bindings_;
};

void expect_end(Lexer& lex) {
  if (lex.peek().kind != Tok::End)
    throw ParseError("unexpected trailing input '" + lex.peek().text + "'", lex.peek().pos);
}

}  // namespace

PropFormula parse_prop(std::string_view text, const Bindings& bindings) {
  Lexer lex(text);
  PropFormula f = PropParser(lex, bindings).parse();
  expect_end(lex);
  return f;
}

QtlFormula parse_qtl(std::string_view text, const Bindings& bindings) {
  Lexer lex(text);
  QtlFormula f = QtlParser(lex, bindings).parse();
  expect_end(lex);
  return f;
}

namespace {

// Splits leading `let name = <prop>` lines off a formula file.
std::size_t consume_lets(std::string_view text, Bindings& bindings) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t line_start = pos;
    while (line_start < text.size() &&
           (text[line_start] == ' ' || text[line_start] == '\t' || text[line_start] == '\n' ||
            text[line_start] == '\r'))
      ++line_start;
    std::string_view rest = text.substr(line_start);
    if (!(rest.substr(0, 3) == "let" &&
          (rest.size() == 3 ||
           (!std::isalnum(static_cast<unsigned char>(rest[3])) && rest[3] != '_'))))
      return line_start;
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(line_start, eol - line_start);
    Lexer lex(line.substr(3));
    Token name = lex.take();
    if (name.kind != Tok::Ident || as_symbol(name.text))
      throw ParseError("expected a binding name after 'let'", line_start + 3 + name.pos);
    Token eq = lex.take();
    if (eq.kind != Tok::Eq) throw ParseError("expected '=' in let binding", line_start + 3 + eq.pos);
    // The bound formula is the remainder of the line.
    std::size_t body_off = 3 + eq.pos + 1;
    PropFormula f = parse_prop(line.substr(body_off), bindings);
    if (bindings.count(name.text))
      throw ParseError("duplicate binding '" + name.text + "'", line_start);
    bindings.emplace(name.text, std::move(f));
    pos = eol;
  }
  return pos;
}

}  // namespace

FormulaFile parse_formula_file(std::string_view text) {
  Bindings bindings;
  std::size_t pos = consume_lets(text, bindings);
  std::string_view body = text.substr(pos);
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError("formula file contains no formula", pos);
  QtlFormula f = parse_qtl(body, bindings);
  return FormulaFile{std::move(bindings), std::move(f)};
}

std::vector<PropFormula> parse_prop_list(std::string_view text) {
  Bindings bindings;
  std::size_t pos = consume_lets(text, bindings);
  std::vector<PropFormula> out;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos)
      out.push_back(parse_prop(line, bindings));
    pos = eol + (eol < text.size() ? 1 : 0);
  }
  if (out.empty()) throw ParseError("formula list is empty");
  return out;
}

}  // namespace qtl
