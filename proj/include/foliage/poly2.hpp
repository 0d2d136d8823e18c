#pragma once

// Sparse bivariate polynomials and polynomial 1-forms  a dx + b dy.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "foliage/upoly.hpp"

namespace foliage {

using Exp2 = std::pair<int, int>;

class Poly2 {
 public:
  Poly2() : f_(Field::rationals()) {}
  explicit Poly2(FieldPtr f) : f_(std::move(f)) {}
  static Poly2 constant(const FieldElem& c);
  static Poly2 monomial(const FieldElem& c, int i, int j);
  static Poly2 x(const FieldPtr& f) { return monomial(FieldElem(f, Rational(1)), 1, 0); }
  static Poly2 y(const FieldPtr& f) { return monomial(FieldElem(f, Rational(1)), 0, 1); }

  const FieldPtr& field() const { return f_; }
  const std::map<Exp2, FieldElem>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  FieldElem coeff(int i, int j) const;
  void set(int i, int j, const FieldElem& c);
  void add_term(int i, int j, const FieldElem& c);

  // Minimum total degree; nullopt for the zero polynomial.
  std::optional<int> order() const;
  int total_degree() const;  // -1 for zero
  Poly2 homogeneous_part(int d) const;
  Poly2 truncate(int max_deg) const;  // keep total degree <= max_deg
  Poly2 lift(const FieldPtr& to) const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  Poly2 scale(const FieldElem& c) const;
  Poly2 mul_monomial(int i, int j) const;
  // Products truncated at total degree max_deg.
  static Poly2 mul_trunc(const Poly2& a, const Poly2& b, int max_deg);
  bool operator==(const Poly2& o) const;
  bool operator!=(const Poly2& o) const { return !(*this == o); }

  Poly2 dx() const;
  Poly2 dy() const;
  // x -> u, y -> u v   (exponents (i,j) -> (i+j, j))
  Poly2 chart_x() const;
  // x -> u v, y -> v   (exponents (i,j) -> (i, i+j))
  Poly2 chart_y() const;
  // Exact division by x^k (resp. y^k); throws if not divisible.
  Poly2 div_x_pow(int k) const;
  Poly2 div_y_pow(int k) const;
  int x_adic_order() const;  // max k with x^k | p, large value for zero
  int y_adic_order() const;
  // p(x + cx, y + cy)
  Poly2 translate(const FieldElem& cx, const FieldElem& cy) const;
  // p(alpha x + beta y, gamma x + delta y)
  Poly2 linear_subs(const FieldElem& alpha, const FieldElem& beta, const FieldElem& gamma,
                    const FieldElem& delta) const;
  UPoly restrict_x0() const;  // p(0, y) as a polynomial in y
  UPoly restrict_y0() const;  // p(x, 0) as a polynomial in x
  FieldElem eval(const FieldElem& x, const FieldElem& y) const;

  std::string str(const std::string& xv = "x", const std::string& yv = "y") const;

 private:
  FieldPtr f_;
  std::map<Exp2, FieldElem> t_;
};

struct LinearPart {
  // Matrix of the dual vector field  b d/dx - a d/dy  at the origin:
  //   [[b10, b01], [-a10, -a01]].
  FieldElem m11, m12, m21, m22;
  FieldElem trace() const { return m11 + m22; }
  FieldElem det() const { return m11 * m22 - m12 * m21; }
};

struct OneForm {
  Poly2 a;  // coefficient of dx
  Poly2 b;  // coefficient of dy

  const FieldPtr& field() const { return a.field(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  std::optional<int> order() const;
  OneForm lift(const FieldPtr& to) const { return {a.lift(to), b.lift(to)}; }
  LinearPart linear_part() const;
  bool operator==(const OneForm& o) const { return a == o.a && b == o.b; }
  bool operator!=(const OneForm& o) const { return !(*this == o); }
  std::string str(const std::string& xv = "x", const std::string& yv = "y") const;
};

// Order of a polynomial as a number, or "Infinite" for zero.
std::optional<int> poly_order(const Poly2& p);

// P = x*a_nu + y*b_nu with nu the order of the form.
Poly2 tangent_cone(const OneForm& w);

enum class RatioTag { BothZeroEigen, SaddleNodeCandidate, RationalRatio, IrrationalOrComplexRatio };

struct RatioClass {
  RatioTag tag = RatioTag::BothZeroEigen;
  // RationalRatio: the root of larger modulus is sign * p / q, p >= q > 0 coprime.
  Integer p = 0, q = 1;
  int sign = 0;
  std::optional<FieldElem> s;  // trace^2/det when det != 0
  bool reduced_type() const;   // saddle-node, negative ratio, or irrational/complex
  std::string str() const;
};

RatioClass ratio_class(const FieldElem& trace, const FieldElem& det);

}  // namespace foliage
