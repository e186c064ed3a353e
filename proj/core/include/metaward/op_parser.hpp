#pragma once

#include <string>

#include "metaward/diffop.hpp"

namespace metaward {

// Parses the canonical operator syntax used by the printer and the CLI:
//
//   expr    := term (('+'|'-') term)*
//   term    := factor ('*' factor)*        ('*' composes operators)
//   factor  := '-' factor | primary ('^' exponent)?
//   primary := rational | 'i' | symbol | 'd'symbol | '(' expr ')'
//
// Rationals are INT or INT/UINT, 'i' is the imaginary unit, 'd'+name is the
// partial derivative for a differentiable symbol ("dt", "dzeta1", ...), and
// exponents are integers (negative ones only on rationals and on the
// invertible scale symbol). The variable set is inferred from the symbols
// that appear — plain, two-body labeled, or reduced — or can be forced.
// Errors carry 1-based line/column positions (ParseError).
DiffOp parse_operator(const std::string& text);
DiffOp parse_operator(const std::string& text, RingPtr ring);

} // namespace metaward
