#pragma once

#include <string>
#include <string_view>

#include "valent/field_element.hpp"

namespace valent {

/// Parses the element grammar:
///
///   element  := fraction | sum
///   fraction := '(' sum ')' '/' '(' sum ')'
///   sum      := term (('+'|'-') term)*
///   term     := coeff | coeff '*' power | power
///   power    := 't' ['^' exponent]
///   exponent := integer | '(' integer '/' integer ')'
///   coeff    := integer | integer '/' integer
///
/// Whitespace is ignored, integers may carry a leading '-', a parenthesized
/// exponent may omit its denominator, and the first
/// term of a sum may carry a sign. Throws ParseError with the offending
/// position.
FieldElement parse_element(std::string_view text);

/// Inverse of parse_element. Terms appear in increasing exponent order;
/// monomial denominators are folded into negative exponents, others use the
/// fraction form.
std::string format_element(const FieldElement& x);
std::string format_poly(const PuiseuxPoly& p);

}  // namespace valent
