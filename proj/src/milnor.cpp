#include <algorithm>

#include "foliage/error.hpp"
#include "foliage/invariants.hpp"
#include "linalg.hpp"

namespace foliage {

namespace {

// Coefficients in y, each a polynomial in x.
using YPoly = std::vector<UPoly>;

YPoly to_ypoly(const Poly2& p) {
  YPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (static_cast<int>(out.size()) <= e.second) out.resize(e.second + 1, UPoly(p.field()));
    out[e.second] = out[e.second] + UPoly::monomial(p.field(), c, e.first);
  }
  return out;
}

Poly2 from_ypoly(const YPoly& v, const FieldPtr& f) {
  Poly2 p(f);
  for (size_t j = 0; j < v.size(); ++j)
    for (int i = 0; i <= v[j].degree(); ++i)
      if (!v[j].coeff(i).is_zero()) p.add_term(i, static_cast<int>(j), v[j].coeff(i));
  return p;
}

void trim(YPoly& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(Status::Internal, "inexact polynomial division");
  return q;
}

UPoly content(const YPoly& v, const FieldPtr& f) {
  UPoly g(f);
  for (const auto& c : v) g = gcd(g, c);
  return g;
}

YPoly primitive(const YPoly& v, const FieldPtr& f) {
  UPoly c = content(v, f);
  YPoly out;
  for (const auto& x : v) out.push_back(exact_quotient(x, c));
  return out;
}

// lc(B)^(deg A - deg B + 1) * A mod B, as polynomials in y.
YPoly pseudo_remainder(YPoly a, const YPoly& b) {
  const UPoly& lb = b.back();
  int db = static_cast<int>(b.size()) - 1;
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    UPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (int j = 0; j <= db; ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

Poly2 poly_gcd(const Poly2& a, const Poly2& b) {
  FieldPtr f = common_field(a.field(), b.field());
  FieldElem one(f, Rational(1));
  if (a.is_zero() && b.is_zero()) return Poly2(f);
  YPoly A = to_ypoly(a.lift(f)), B = to_ypoly(b.lift(f));
  trim(A);
  trim(B);
  UPoly c = gcd(content(A, f), content(B, f));
  if (A.empty()) std::swap(A, B);
  A = primitive(A, f);
  if (!B.empty()) B = primitive(B, f);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    YPoly r = pseudo_remainder(A, B);
    A = B;
    B = r.empty() ? r : primitive(r, f);
  }
  YPoly g;
  if (A.size() <= 1) {
    g = {c};
  } else {
    g = primitive(A, f);
    for (auto& x : g) x = x * c;
  }
  trim(g);
  Poly2 out = from_ypoly(g, f);
  // Normalize by the coefficient of the largest monomial.
  FieldElem lead = out.terms().rbegin()->second;
  return out.scale(lead.inv());
}

Poly2 poly_exact_div(const Poly2& a, const Poly2& g) {
  FieldPtr f = common_field(a.field(), g.field());
  if (g.is_zero()) throw Error(Status::Internal, "division by the zero polynomial");
  YPoly A = to_ypoly(a.lift(f)), G = to_ypoly(g.lift(f));
  trim(A);
  trim(G);
  int dg = static_cast<int>(G.size()) - 1;
  YPoly Q(std::max<int>(0, static_cast<int>(A.size()) - dg), UPoly(f));
  while (!A.empty() && static_cast<int>(A.size()) - 1 >= dg) {
    int shift = static_cast<int>(A.size()) - 1 - dg;
    UPoly q = exact_quotient(A.back(), G.back());
    Q[shift] = q;
    for (int j = 0; j <= dg; ++j) A[j + shift] = A[j + shift] - q * G[j];
    trim(A);
  }
  if (!A.empty()) throw Error(Status::Internal, "inexact bivariate division");
  trim(Q);
  return from_ypoly(Q, f);
}

MilnorResult milnor_number(const Poly2& a0, const Poly2& b0, int cap) {
  MilnorResult res;
  FieldPtr f = common_field(a0.field(), b0.field());
  Poly2 a = a0.lift(f), b = b0.lift(f);
  Poly2 g = poly_gcd(a, b);
  if (g.is_zero() || (g.total_degree() > 0 && g.coeff(0, 0).is_zero())) {
    res.code = MilnorResult::Code::NotIsolated;
    return res;
  }
  auto dim_at = [&](int N) {
    detail::Echelon ech(f);
    for (const Poly2* gen : {&a, &b}) {
      for (int n = 0; n < N; ++n) {
        for (int j = 0; j <= n; ++j) {
          detail::SparseRow row;
          for (const auto& [e, c] : gen->terms()) {
            int ii = e.first + n - j, jj = e.second + j;
            if (ii + jj < N) row.emplace(detail::monomial_index(ii, jj), c);
          }
          if (!row.empty()) ech.add(std::move(row));
        }
      }
    }
    return static_cast<long>(N) * (N + 1) / 2 - static_cast<long>(ech.rank());
  };
  long prev = dim_at(1);
  for (int N = 1; N <= cap + 1; ++N) {
    long next = dim_at(N + 1);
    if (next == prev) {
      res.value = prev;
      res.stabilized_at = N;
      return res;
    }
    if (next > cap) break;
    prev = next;
  }
  res.code = MilnorResult::Code::CapExceeded;
  return res;
}

}  // namespace foliage
