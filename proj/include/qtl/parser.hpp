#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qtl/logic.hpp"
#include "qtl/prop.hpp"

namespace qtl {

// Concrete syntax.
//
// Propositional formulas: symbols p<digits>, operators ! & | -> <->,
// parentheses; precedence ! > & > | > -> > <->, right-associative ->.
//
// QTL formulas: the same connectives over linear atoms
//   <linexpr> (>=|<=|=|<|>) <linexpr>
//   linexpr := [-] term (("+"|"-") term)*
//   term    := rational "*" component | rational | component
//   component := "[" prop-formula (";" "{" p<i> ("," p<i>)* "}")? "]" | name
// An omitted support means the normal form (support = Var). A bare name
// refers to a `let` binding and stands for the normal component of the bound
// formula. Rational constants are allowed throughout and cleared to integer
// coefficients. `true` and `false` are formulas.

using Bindings = std::map<std::string, PropFormula>;

PropFormula parse_prop(std::string_view text, const Bindings& bindings = {});

QtlFormula parse_qtl(std::string_view text, const Bindings& bindings = {});

struct FormulaFile {
  Bindings bindings;
  QtlFormula formula;
};

/// A formula file: zero or more `let <name> = <prop-formula>` lines followed
/// by one QTL/PTL formula (which may span lines).
FormulaFile parse_formula_file(std::string_view text);

/// One propositional formula per nonblank line; `let` bindings allowed first.
std::vector<PropFormula> parse_prop_list(std::string_view text);

}  // namespace qtl
