#include "qtl/rational.hpp"

#include <cctype>

#include "qtl/error.hpp"

namespace qtl {

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view t) -> BigInt {
    if (t.empty()) throw ParseError("empty integer in rational");
    std::size_t i = 0;
    if (t[0] == '-' || t[0] == '+') i = 1;
    if (i == t.size()) throw ParseError("sign without digits in rational");
    for (std::size_t j = i; j < t.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(t[j])))
        throw ParseError("invalid digit in rational", j);
    return BigInt(std::string(t));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator");
  return Rational(num, den);
}

}  // namespace qtl
