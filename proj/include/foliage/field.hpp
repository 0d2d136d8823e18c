#pragma once

// Exact arithmetic in towers Q ⊂ Q(a1) ⊂ Q(a1)(a2) ⊂ ...
//
// An element of a level-n field is stored flat: coordinate k*D + i is the
// i-th coordinate (over Q) of the coefficient of a_n^k, where D is the
// degree of the parent level over Q.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace foliage {

using Rational = mpq_class;
using Integer = mpz_class;

struct Field;
using FieldPtr = std::shared_ptr<const Field>;

class FieldElem {
 public:
  FieldElem();  // zero of Q
  explicit FieldElem(FieldPtr f);
  FieldElem(FieldPtr f, const Rational& q);
  FieldElem(FieldPtr f, std::vector<Rational> coords);
  FieldElem(long v);  // NOLINT: small rational literals

  static FieldElem generator(const FieldPtr& f);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational to_rational() const;  // requires is_rational()

  FieldElem lift(const FieldPtr& to) const;
  FieldElem inv() const;
  // Trace from this element's field down to the ancestor `sub`.
  FieldElem trace_to(const FieldPtr& sub) const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  FieldPtr f_;
  std::vector<Rational> c_;
};

struct Field {
  FieldPtr parent;                  // null for Q
  std::string gen;                  // generator name, empty for Q
  std::vector<FieldElem> minpoly;   // monic, low to high, over parent
  int degree = 1;                   // over parent
  int dim = 1;                      // over Q
  int depth = 0;
  std::vector<FieldElem> power_traces;  // Tr(gen^k) over parent, k < degree

  static FieldPtr rationals();
  bool is_rationals() const { return depth == 0; }
  // Generator names from the bottom of the tower up.
  std::vector<std::string> tower_names() const;
};

// True when `sub` is `f` or one of its ancestors.
bool is_subfield(const FieldPtr& sub, const FieldPtr& f);
// The deeper of the two fields when one contains the other; throws otherwise.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

// Builds a one-level extension without checking irreducibility.
FieldPtr make_extension_unchecked(const FieldPtr& base, const std::vector<FieldElem>& monic_minpoly,
                                  const std::string& gen);

std::optional<Rational> perfect_square(const Rational& q);
// n / d in lowest terms, d != 0.
Rational make_rational(long n, long d);

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace foliage
