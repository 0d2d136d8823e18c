#include "foliage/field.hpp"

#include <sstream>

#include "foliage/error.hpp"

namespace foliage {

namespace {

// Flat multiplication of coordinate vectors in field f.
std::vector<Rational> mul_coords(const Field& f, const std::vector<Rational>& x, const std::vector<Rational>& y);

std::vector<Rational> chunk(const std::vector<Rational>& v, int k, int sz) {
  return std::vector<Rational>(v.begin() + k * sz, v.begin() + (k + 1) * sz);
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

std::vector<Rational> mul_coords(const Field& f, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (f.depth == 0) return {x[0] * y[0]};
  const Field& p = *f.parent;
  const int d = f.degree;
  const int D = p.dim;
  std::vector<std::vector<Rational>> prod(2 * d - 1, std::vector<Rational>(D));
  std::vector<std::vector<Rational>> xs(d), ys(d);
  std::vector<bool> xz(d), yz(d);
  for (int k = 0; k < d; ++k) {
    xs[k] = chunk(x, k, D);
    ys[k] = chunk(y, k, D);
    xz[k] = all_zero(xs[k]);
    yz[k] = all_zero(ys[k]);
  }
  for (int i = 0; i < d; ++i) {
    if (xz[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (yz[j]) continue;
      auto t = mul_coords(p, xs[i], ys[j]);
      for (int r = 0; r < D; ++r) prod[i + j][r] += t[r];
    }
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    if (all_zero(prod[k])) continue;
    for (int i = 0; i < d; ++i) {
      const auto& m = f.minpoly[i].coords();
      if (all_zero(m)) continue;
      auto t = mul_coords(p, prod[k], m);
      for (int r = 0; r < D; ++r) prod[k - d + i][r] -= t[r];
    }
  }
  std::vector<Rational> out(f.dim);
  for (int k = 0; k < d; ++k)
    for (int r = 0; r < D; ++r) out[k * D + r] = prod[k][r];
  return out;
}

}  // namespace

FieldPtr Field::rationals() {
  static const FieldPtr q = std::make_shared<const Field>();
  return q;
}

std::vector<std::string> Field::tower_names() const {
  std::vector<std::string> out;
  for (const Field* f = this; f && f->depth > 0; f = f->parent.get()) out.insert(out.begin(), f->gen);
  return out;
}

bool is_subfield(const FieldPtr& sub, const FieldPtr& f) {
  for (const Field* g = f.get(); g; g = g->parent.get())
    if (g == sub.get()) return true;
  return false;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return a;
  if (is_subfield(a, b)) return b;
  if (is_subfield(b, a)) return a;
  throw Error(Status::Internal, "elements of unrelated number fields combined");
}

FieldPtr make_extension_unchecked(const FieldPtr& base, const std::vector<FieldElem>& monic_minpoly,
                                  const std::string& gen) {
  auto f = std::make_shared<Field>();
  f->parent = base;
  f->gen = gen;
  f->degree = static_cast<int>(monic_minpoly.size()) - 1;
  if (f->degree < 1) throw Error(Status::InvalidArg, "minimal polynomial of degree < 1");
  f->dim = base->dim * f->degree;
  f->depth = base->depth + 1;
  for (const auto& c : monic_minpoly) f->minpoly.push_back(c.lift(base));
  if (!f->minpoly.back().is_one()) throw Error(Status::InvalidArg, "minimal polynomial not monic");
  // Newton identities for the power sums of the roots.
  const int d = f->degree;
  std::vector<FieldElem> p(d, FieldElem(base));
  auto m = [&](int i) { return f->minpoly[i]; };  // x^d + m(d-1) x^(d-1) + ...
  p[0] = FieldElem(base, Rational(d));
  for (int k = 1; k < d; ++k) {
    FieldElem s = FieldElem(base, Rational(k)) * m(d - k);
    for (int i = 1; i < k; ++i) s += m(d - i) * p[k - i];
    p[k] = -s;
  }
  f->power_traces = p;
  return f;
}

FieldElem::FieldElem() : f_(Field::rationals()), c_(1) {}
FieldElem::FieldElem(FieldPtr f) : f_(std::move(f)), c_(f_->dim) {}
FieldElem::FieldElem(FieldPtr f, const Rational& q) : f_(std::move(f)), c_(f_->dim) {
  c_[0] = q;
}
FieldElem::FieldElem(FieldPtr f, std::vector<Rational> coords) : f_(std::move(f)), c_(std::move(coords)) {
  if (static_cast<int>(c_.size()) != f_->dim) throw Error(Status::Internal, "coordinate length mismatch");
}
FieldElem::FieldElem(long v) : f_(Field::rationals()), c_(1) { c_[0] = v; }

FieldElem FieldElem::generator(const FieldPtr& f) {
  FieldElem g(f);
  g.c_[f->parent->dim] = 1;
  return g;
}

bool FieldElem::is_zero() const { return all_zero(c_); }

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool FieldElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational FieldElem::to_rational() const {
  if (!is_rational()) throw Error(Status::Internal, "element is not rational");
  return c_[0];
}

FieldElem FieldElem::lift(const FieldPtr& to) const {
  if (to == f_) return *this;
  if (!is_subfield(f_, to)) throw Error(Status::Internal, "lift into a field that does not contain the element");
  std::vector<Rational> c(to->dim);
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
  return FieldElem(to, std::move(c));
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (o.f_ != f_) {
    auto f = common_field(f_, o.f_);
    *this = lift(f);
    FieldElem b = o.lift(f);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (f_->depth == 0 && o.f_->depth == 0) {
    c_[0] *= o.c_[0];
    return *this;
  }
  auto f = common_field(f_, o.f_);
  FieldElem a = lift(f), b = o.lift(f);
  if (b.is_rational()) {
    for (auto& q : a.c_) q *= b.c_[0];
    return *this = a;
  }
  if (a.is_rational()) {
    for (auto& q : b.c_) q *= a.c_[0];
    return *this = b;
  }
  c_ = mul_coords(*f, a.c_, b.c_);
  f_ = f;
  return *this;
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw Error(Status::Internal, "division by zero");
  if (is_rational()) return FieldElem(f_, 1 / c_[0]);
  // Solve (x * y) = 1 on the flat basis by Gaussian elimination.
  const int n = f_->dim;
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    auto col = mul_coords(*f_, c_, e);
    for (int i = 0; i < n; ++i) M[i][j] = col[i];
  }
  M[0][n] = 1;
  for (int c = 0, r = 0; c < n; ++c, ++r) {
    int piv = r;
    while (piv < n && sgn(M[piv][c]) == 0) ++piv;
    if (piv == n) throw Error(Status::Internal, "singular multiplication map");
    std::swap(M[piv], M[r]);
    Rational s = 1 / M[r][c];
    for (int k = c; k <= n; ++k) M[r][k] *= s;
    for (int i = 0; i < n; ++i) {
      if (i == r || sgn(M[i][c]) == 0) continue;
      Rational t = M[i][c];
      for (int k = c; k <= n; ++k) M[i][k] -= t * M[r][k];
    }
  }
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = M[i][n];
  return FieldElem(f_, std::move(y));
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  if (f_->depth == 0 && o.f_->depth == 0) {
    if (sgn(o.c_[0]) == 0) throw Error(Status::Internal, "division by zero");
    c_[0] /= o.c_[0];
    return *this;
  }
  return *this *= o.inv();
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (f_ == o.f_) return c_ == o.c_;
  auto f = common_field(f_, o.f_);
  return lift(f).c_ == o.lift(f).c_;
}

FieldElem FieldElem::trace_to(const FieldPtr& sub) const {
  if (f_ == sub) return *this;
  if (!is_subfield(sub, f_)) throw Error(Status::Internal, "trace to a non-subfield");
  const Field& f = *f_;
  const int D = f.parent->dim;
  FieldElem t(f.parent);
  for (int k = 0; k < f.degree; ++k) {
    FieldElem ck(f.parent, chunk(c_, k, D));
    if (!ck.is_zero()) t += ck * f.power_traces[k];
  }
  return t.trace_to(sub);
}

std::string rational_str(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(Status::Parse, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::string FieldElem::str() const {
  if (f_->depth == 0) return rational_str(c_[0]);
  const Field& f = *f_;
  const int D = f.parent->dim;
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < f.degree; ++k) {
    FieldElem ck(f.parent, chunk(c_, k, D));
    if (ck.is_zero()) continue;
    bool simple = ck.is_rational();
    bool neg = simple && sgn(ck.to_rational()) < 0;
    std::string cs = (neg ? -ck : ck).str();
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (k == 0) {
      os << (simple ? cs : "(" + cs + ")");
    } else {
      if (cs != "1") os << (simple ? cs : "(" + cs + ")") << "*";
      os << f.gen;
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::optional<Rational> perfect_square(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational make_rational(long n, long d) {
  Rational r{Integer(n), Integer(d)};
  r.canonicalize();
  return r;
}

}  // namespace foliage
