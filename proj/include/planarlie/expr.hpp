#pragma once

#include <string>
#include <vector>

#include "planarlie/field.hpp"

namespace planarlie {

// Grammar (whitespace insensitive):
//   expression := ['-'] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := primary ('^' nat)*
//   primary    := rational | 'i' | 'x' | 'y' | 'exp' '(' expression ')'
//               | '(' expression ')' | 'Dx' | 'Dy'
//   rational   := nat ['/' posnat]
// Every additive summand carries exactly one Dx or Dy factor; exp arguments
// must be Gaussian-rational linear combinations of x and y.
VectorField parse_field(const std::string& text, int line_offset = 1);

// Parses a pure scalar-valued expression (no Dx/Dy) into an ExpPoly.
ExpPoly parse_scalar_poly(const std::string& text, int line_offset = 1);

// Parses an expression that must reduce to a constant.
GaussianRational parse_scalar(const std::string& text);

std::string print_field(const VectorField& v);

// One field per non-empty line; '#' starts a comment.
std::vector<VectorField> parse_algebra_file(const std::string& text);

}  // namespace planarlie
