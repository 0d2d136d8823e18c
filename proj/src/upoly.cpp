#include "foliage/upoly.hpp"

#include <sstream>

#include "foliage/error.hpp"

namespace foliage {

UPoly::UPoly(FieldPtr f, std::vector<FieldElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (auto& c : c_) c = c.lift(f_);
  trim();
}

UPoly UPoly::from_rationals(const std::vector<Rational>& coeffs) {
  auto q = Field::rationals();
  std::vector<FieldElem> c;
  for (const auto& r : coeffs) c.emplace_back(q, r);
  return UPoly(q, std::move(c));
}

UPoly UPoly::monomial(const FieldPtr& f, const FieldElem& c, int deg) {
  std::vector<FieldElem> v(deg + 1, FieldElem(f));
  v[deg] = c.lift(f);
  return UPoly(f, std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem(f_);
  return c_[i];
}

int UPoly::low_order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

UPoly UPoly::lift(const FieldPtr& to) const {
  if (to == f_) return *this;
  std::vector<FieldElem> c;
  c.reserve(c_.size());
  for (const auto& e : c_) c.push_back(e.lift(to));
  return UPoly(to, std::move(c));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  FieldElem s = lc().inv();
  return scale(s);
}

UPoly UPoly::scale(const FieldElem& s) const {
  auto f = common_field(f_, s.field());
  std::vector<FieldElem> c;
  for (const auto& e : c_) c.push_back(e * s);
  return UPoly(f, std::move(c));
}

UPoly UPoly::derivative() const {
  std::vector<FieldElem> c;
  for (size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * FieldElem(static_cast<long>(i)));
  return UPoly(f_, std::move(c));
}

FieldElem UPoly::eval(const FieldElem& x) const {
  FieldElem r(common_field(f_, x.field()));
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

UPoly UPoly::shift(const FieldElem& c) const {
  // Horner with the linear polynomial (x + c).
  auto f = common_field(f_, c.field());
  UPoly lin(f, {c, FieldElem(f, Rational(1))});
  UPoly r(f);
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + UPoly(f, {c_[i]});
  return r;
}

UPoly UPoly::operator-() const {
  std::vector<FieldElem> c;
  for (const auto& e : c_) c.push_back(-e);
  return UPoly(f_, std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  auto f = common_field(a.f_, b.f_);
  size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<FieldElem> c(n, FieldElem(f));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(f, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  auto f = common_field(a.f_, b.f_);
  if (a.is_zero() || b.is_zero()) return UPoly(f);
  std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem(f));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(f, std::move(c));
}

bool UPoly::operator==(const UPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    bool neg = c_[i].is_rational() && sgn(c_[i].to_rational()) < 0;
    std::string cs = (neg ? -c_[i] : c_[i]).str();
    if (!c_[i].is_rational()) cs = "(" + cs + ")";
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(Status::Internal, "polynomial division by zero");
  auto f = common_field(a.field(), b.field());
  std::vector<FieldElem> r = a.lift(f).coeffs();
  const int db = b.degree();
  FieldElem inv = b.lc().inv();
  const auto& bc = b.coeffs();
  int dr = static_cast<int>(r.size()) - 1;
  std::vector<FieldElem> q(std::max(dr - db + 1, 0), FieldElem(f));
  for (int k = dr; k >= db; --k) {
    if (r[k].is_zero()) continue;
    FieldElem t = r[k] * inv;
    q[k - db] = t;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= t * bc[i];
  }
  r.resize(std::min<size_t>(r.size(), static_cast<size_t>(db)), FieldElem(f));
  return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

FieldElem resultant(const UPoly& a0, const UPoly& b0) {
  auto f = common_field(a0.field(), b0.field());
  UPoly a = a0.lift(f), b = b0.lift(f);
  if (a.is_zero() || b.is_zero()) return FieldElem(f);
  FieldElem res(f, Rational(1));
  while (b.degree() > 0) {
    UPoly r = divmod(a, b).second;
    if (r.is_zero()) return FieldElem(f);
    int n = a.degree(), m = b.degree(), dr = r.degree();
    if ((n * m) % 2 == 1) res = -res;
    FieldElem l = b.lc();
    for (int i = 0; i < n - dr; ++i) res *= l;
    a = b;
    b = r;
  }
  FieldElem l = b.lc();
  for (int i = 0; i < a.degree(); ++i) res *= l;
  return res;
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& p) {
  // Yun's algorithm (characteristic zero).
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() <= 0) return out;
  UPoly f = p.monic();
  UPoly fp = f.derivative();
  UPoly a = gcd(f, fp);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(fp, a).first;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

UPoly interpolate(const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys, const FieldPtr& f) {
  // Newton divided differences.
  const size_t n = xs.size();
  std::vector<FieldElem> dd(ys.begin(), ys.end());
  for (auto& e : dd) e = e.lift(f);
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly r(f);
  for (size_t k = n; k-- > 0;) {
    r = r * UPoly(f, {-xs[k], FieldElem(f, Rational(1))}) + UPoly(f, {dd[k]});
  }
  return r;
}

}  // namespace foliage
