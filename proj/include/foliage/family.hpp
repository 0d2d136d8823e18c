#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "foliage/poly2.hpp"

namespace foliage {

// Polynomial in x, y, t with rational coefficients; key is (i, j, k) for x^i y^j t^k.
using Poly3 = std::map<std::array<int, 3>, Rational>;

struct OneFormFamily {
  Poly3 a;
  Poly3 b;
  bool depends_on_t() const;
  std::string str() const;
};

OneForm specialize(const OneFormFamily& fam, const Rational& t0);
OneFormFamily constant_family(const OneForm& w);

struct ReduceConfig;

struct SampleVerdict {
  Rational t;
  bool ok = false;
  std::string reason;     // empty when ok
  long mu = -1;           // Milnor number at the origin (-1 when not isolated)
  std::string hash;       // canonical hash of the arrowed dual tree, empty on failure
};

struct EquisingReport {
  long base_mu = -1;
  std::string base_hash;
  std::vector<SampleVerdict> samples;  // in increasing order of t
  bool equisingular_at_samples = false;
  std::string label = "sampling check, not a proof";
};

// Throws the base form's reduction error when the base itself cannot be reduced.
EquisingReport equising_sample_check(const OneFormFamily& fam, const std::vector<Rational>& samples,
                                     const ReduceConfig& cfg, long milnor_cap = 256);

std::vector<Rational> default_samples();

}  // namespace foliage
