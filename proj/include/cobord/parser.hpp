#pragma once

#include <string>

#include "cobord/polynomial.hpp"

namespace cobord {

/// Parses an expression over the ring's variables into a Polynomial.
///
/// Grammar: integers, rationals a/b, variable names, + - * ^ with
/// non-negative integer exponents, and parentheses. Multiplication is always
/// explicit. Throws SyntaxError (position-annotated), UnknownVariable, or
/// BadCharacteristic.
Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);

}  // namespace cobord
