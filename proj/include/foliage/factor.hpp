#pragma once

#include <string>
#include <utility>
#include <vector>

#include "foliage/upoly.hpp"

namespace foliage {

// Complete factorization into monic irreducible factors with multiplicities.
// The output order is deterministic: by multiplicity, degree, then text.
std::vector<std::pair<UPoly, int>> factor_univariate(const UPoly& p);

// Factorization of a primitive square-free integer polynomial (low to high)
// into primitive irreducible integer factors.
std::vector<std::vector<Integer>> factor_squarefree_integer(const std::vector<Integer>& f);

// One-level extension of `base` by a root of `minpoly`.  Throws
// Status::ReducibleMinpoly when minpoly has degree < 2 or is reducible.
FieldPtr extend_field(const FieldPtr& base, const UPoly& minpoly, const std::string& gen);

// Norm down one tower level of a polynomial over an extension field.
UPoly norm_down(const UPoly& p);

}  // namespace foliage
