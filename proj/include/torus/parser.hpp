#pragma once

#include <string>
#include <string_view>

#include "torus/multipoly.hpp"

namespace torus {

/// Largest exponent accepted after '^'.
inline constexpr int kMaxExponent = 64;

/// Parses a polynomial expression over x, y, z and the constant a = sqrt(m).
///
///   expr     := term (('+' | '-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := rational | 'a' | 'x' | 'y' | 'z' | '(' expr ')' | '-' factor
///   rational := int ('/' uint)?
///
/// Throws SyntaxError (with byte offset and expected tokens) or OverflowError.
MultiPoly parse(std::string_view text, const FieldPtr& field);

/// Canonical text: graded lexicographic order (x > y > z), " + " / " - "
/// separators, parenthesised fractional coefficients. Round-trips through parse.
std::string serialize(const MultiPoly& p);

}  // namespace torus
