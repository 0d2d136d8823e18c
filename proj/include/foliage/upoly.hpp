#pragma once

// Dense univariate polynomials over a number field tower.

#include <string>
#include <utility>
#include <vector>

#include "foliage/field.hpp"

namespace foliage {

class UPoly {
 public:
  UPoly() : f_(Field::rationals()) {}
  explicit UPoly(FieldPtr f) : f_(std::move(f)) {}
  UPoly(FieldPtr f, std::vector<FieldElem> coeffs);  // low to high
  static UPoly from_rationals(const std::vector<Rational>& coeffs);
  static UPoly monomial(const FieldPtr& f, const FieldElem& c, int deg);
  static UPoly x(const FieldPtr& f) { return monomial(f, FieldElem(f, Rational(1)), 1); }

  const FieldPtr& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem coeff(int i) const;
  FieldElem lc() const { return c_.back(); }
  // Order of vanishing at 0; -1 for zero.
  int low_order() const;

  UPoly lift(const FieldPtr& to) const;
  UPoly monic() const;
  UPoly derivative() const;
  FieldElem eval(const FieldElem& x) const;
  // p(x + c)
  UPoly shift(const FieldElem& c) const;
  UPoly scale(const FieldElem& c) const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  bool operator==(const UPoly& o) const;
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "v") const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<FieldElem> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic, zero if both zero
FieldElem resultant(const UPoly& a, const UPoly& b);
// Square-free decomposition: pairs (monic square-free factor, multiplicity).
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& p);
// Interpolation through (xs[i], ys[i]).
UPoly interpolate(const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys, const FieldPtr& f);

}  // namespace foliage
