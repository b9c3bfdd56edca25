#pragma once

#include <string>
#include <string_view>

#include "schwarzlift/analytic.hpp"

namespace schwarzlift {

/// Parses an expression in one complex variable into an AnalyticFn.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'i' | 'pi' | variable | name '(' args ')' | '(' expr ')'
///
/// Functions: exp log sqrt sin cos tan sinh cosh tanh atanh, and int(e) or
/// int(e, base) for the antiderivative. `^` is right associative and binds
/// tighter than unary minus, so -z^2 = -(z^2). A non-constant exponent is
/// read as exp(b log a). `variable` names the free variable ("z" by default;
/// "x" is accepted as an alias). Throws ParseError with the byte offset.
AnalyticFn parse_expression(std::string_view text, std::string_view variable = "z");

/// Caret diagnostic: the text with a marker under `position`.
std::string parse_diagnostic(std::string_view text, std::size_t position, const std::string& message);

}  // namespace schwarzlift
