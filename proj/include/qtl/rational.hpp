#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace qtl {

// Exact arbitrary-precision arithmetic. Expression templates are disabled so
// that `auto` deduces plain value types.
namespace mp = boost::multiprecision;
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

/// Renders `p/q` in lowest terms; integral values are printed without `/q`.
std::string to_string(const Rational& r);

/// Parses `<int>` or `<int>/<int>`. Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace qtl
