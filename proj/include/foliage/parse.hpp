#pragma once

#include <string>

#include "foliage/family.hpp"
#include "foliage/poly2.hpp"

namespace foliage {

// Grammar: sums of products of rationals, x, y (and t for families),
// parenthesized subexpressions, integer powers, and the differentials dx, dy.
// Juxtaposition is multiplication:  "2*y dy - 3*x^2 dx",  "x dy + y*(y - t) dx".
OneForm parse_oneform(const std::string& text);
OneFormFamily parse_family(const std::string& text);
Poly2 parse_poly(const std::string& text);

}  // namespace foliage
