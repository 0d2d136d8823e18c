#include "foliage/poly2.hpp"

#include <algorithm>
#include <sstream>

#include "foliage/error.hpp"

namespace foliage {

Poly2 Poly2::constant(const FieldElem& c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(const FieldElem& c, int i, int j) {
  Poly2 p(c.field());
  p.set(i, j, c);
  return p;
}

FieldElem Poly2::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  if (it == t_.end()) return FieldElem(f_);
  return it->second;
}

void Poly2::set(int i, int j, const FieldElem& c) {
  if (c.field() != f_) {
    auto f = common_field(f_, c.field());
    if (f != f_) *this = lift(f);
  }
  if (c.is_zero())
    t_.erase({i, j});
  else
    t_[{i, j}] = c.lift(f_);
}

void Poly2::add_term(int i, int j, const FieldElem& c) {
  if (c.is_zero()) return;
  if (c.field() != f_) {
    auto f = common_field(f_, c.field());
    if (f != f_) *this = lift(f);
  }
  auto it = t_.find({i, j});
  if (it == t_.end()) {
    t_.emplace(Exp2{i, j}, c.lift(f_));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

std::optional<int> Poly2::order() const {
  if (t_.empty()) return std::nullopt;
  int m = 1 << 30;
  for (const auto& [e, c] : t_) m = std::min(m, e.first + e.second);
  return m;
}

int Poly2::total_degree() const {
  int m = -1;
  for (const auto& [e, c] : t_) m = std::max(m, e.first + e.second);
  return m;
}

Poly2 Poly2::homogeneous_part(int d) const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_)
    if (e.first + e.second == d) r.t_.emplace(e, c);
  return r;
}

Poly2 Poly2::truncate(int max_deg) const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_)
    if (e.first + e.second <= max_deg) r.t_.emplace(e, c);
  return r;
}

Poly2 Poly2::lift(const FieldPtr& to) const {
  if (to == f_) return *this;
  Poly2 r(to);
  for (const auto& [e, c] : t_) r.t_.emplace(e, c.lift(to));
  return r;
}

Poly2 Poly2::operator-() const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  if (o.f_ != f_) {
    auto f = common_field(f_, o.f_);
    if (f != f_) *this = lift(f);
  }
  for (const auto& [e, c] : o.t_) add_term(e.first, e.second, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) { return *this += -o; }

Poly2 operator*(const Poly2& a, const Poly2& b) { return Poly2::mul_trunc(a, b, 1 << 30); }

Poly2 Poly2::mul_trunc(const Poly2& a, const Poly2& b, int max_deg) {
  auto f = common_field(a.f_, b.f_);
  Poly2 r(f);
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      int i = ea.first + eb.first, j = ea.second + eb.second;
      if (i + j > max_deg) continue;
      r.add_term(i, j, ca * cb);
    }
  return r;
}

Poly2 Poly2::scale(const FieldElem& s) const {
  auto f = common_field(f_, s.field());
  Poly2 r(f);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : t_) r.t_.emplace(e, c * s);
  return r;
}

Poly2 Poly2::mul_monomial(int i, int j) const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) r.t_.emplace(Exp2{e.first + i, e.second + j}, c);
  return r;
}

bool Poly2::operator==(const Poly2& o) const {
  if (t_.size() != o.t_.size()) return false;
  auto it = o.t_.begin();
  for (const auto& [e, c] : t_) {
    if (it->first != e || it->second != c) return false;
    ++it;
  }
  return true;
}

Poly2 Poly2::dx() const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_)
    if (e.first > 0) r.t_.emplace(Exp2{e.first - 1, e.second}, c * FieldElem(e.first));
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_)
    if (e.second > 0) r.t_.emplace(Exp2{e.first, e.second - 1}, c * FieldElem(e.second));
  return r;
}

Poly2 Poly2::chart_x() const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) r.t_.emplace(Exp2{e.first + e.second, e.second}, c);
  return r;
}

Poly2 Poly2::chart_y() const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) r.t_.emplace(Exp2{e.first, e.first + e.second}, c);
  return r;
}

Poly2 Poly2::div_x_pow(int k) const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) {
    if (e.first < k) throw Error(Status::Internal, "polynomial not divisible by x^k");
    r.t_.emplace(Exp2{e.first - k, e.second}, c);
  }
  return r;
}

Poly2 Poly2::div_y_pow(int k) const {
  Poly2 r(f_);
  for (const auto& [e, c] : t_) {
    if (e.second < k) throw Error(Status::Internal, "polynomial not divisible by y^k");
    r.t_.emplace(Exp2{e.first, e.second - k}, c);
  }
  return r;
}

int Poly2::x_adic_order() const {
  int m = 1 << 30;
  for (const auto& [e, c] : t_) m = std::min(m, e.first);
  return m;
}

int Poly2::y_adic_order() const {
  int m = 1 << 30;
  for (const auto& [e, c] : t_) m = std::min(m, e.second);
  return m;
}

namespace {

std::vector<std::vector<Integer>> binomials(int n) {
  std::vector<std::vector<Integer>> C(n + 1);
  for (int i = 0; i <= n; ++i) {
    C[i].resize(i + 1);
    C[i][0] = C[i][i] = 1;
    for (int k = 1; k < i; ++k) C[i][k] = C[i - 1][k - 1] + C[i - 1][k];
  }
  return C;
}

}  // namespace

Poly2 Poly2::translate(const FieldElem& cx, const FieldElem& cy) const {
  auto f = common_field(common_field(f_, cx.field()), cy.field());
  int n = std::max(total_degree(), 0);
  auto C = binomials(n);
  std::vector<FieldElem> px(n + 1, FieldElem(f, Rational(1))), py(n + 1, FieldElem(f, Rational(1)));
  for (int k = 1; k <= n; ++k) {
    px[k] = px[k - 1] * cx;
    py[k] = py[k - 1] * cy;
  }
  Poly2 r(f);
  for (const auto& [e, c] : t_) {
    auto [i, j] = e;
    for (int k = 0; k <= i; ++k) {
      if (k < i && cx.is_zero()) continue;
      FieldElem ck = c * FieldElem(f, Rational(C[i][k])) * px[i - k];
      for (int l = 0; l <= j; ++l) {
        if (l < j && cy.is_zero()) continue;
        r.add_term(k, l, ck * FieldElem(f, Rational(C[j][l])) * py[j - l]);
      }
    }
  }
  return r;
}

Poly2 Poly2::linear_subs(const FieldElem& al, const FieldElem& be, const FieldElem& ga,
                         const FieldElem& de) const {
  auto f = common_field(common_field(common_field(common_field(f_, al.field()), be.field()), ga.field()),
                        de.field());
  Poly2 X(f), Y(f);
  X.add_term(1, 0, al);
  X.add_term(0, 1, be);
  Y.add_term(1, 0, ga);
  Y.add_term(0, 1, de);
  int n = std::max(total_degree(), 0);
  std::vector<Poly2> Xp{Poly2::constant(FieldElem(f, Rational(1)))}, Yp{Xp[0]};
  for (int k = 1; k <= n; ++k) {
    Xp.push_back(Xp.back() * X);
    Yp.push_back(Yp.back() * Y);
  }
  Poly2 r(f);
  for (const auto& [e, c] : t_) r += (Xp[e.first] * Yp[e.second]).scale(c);
  return r;
}

UPoly Poly2::restrict_x0() const {
  std::vector<FieldElem> c;
  for (const auto& [e, v] : t_) {
    if (e.first != 0) continue;
    if (static_cast<int>(c.size()) <= e.second) c.resize(e.second + 1, FieldElem(f_));
    c[e.second] = v;
  }
  return UPoly(f_, c);
}

UPoly Poly2::restrict_y0() const {
  std::vector<FieldElem> c;
  for (const auto& [e, v] : t_) {
    if (e.second != 0) continue;
    if (static_cast<int>(c.size()) <= e.first) c.resize(e.first + 1, FieldElem(f_));
    c[e.first] = v;
  }
  return UPoly(f_, c);
}

FieldElem Poly2::eval(const FieldElem& x, const FieldElem& y) const {
  auto f = common_field(common_field(f_, x.field()), y.field());
  FieldElem r(f);
  for (const auto& [e, c] : t_) {
    FieldElem t = c;
    for (int k = 0; k < e.first; ++k) t *= x;
    for (int k = 0; k < e.second; ++k) t *= y;
    r += t;
  }
  return r;
}

std::string Poly2::str(const std::string& xv, const std::string& yv) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then by descending x exponent.
  std::vector<std::pair<Exp2, FieldElem>> v(t_.begin(), t_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
    int dp = p.first.first + p.first.second, dq = q.first.first + q.first.second;
    if (dp != dq) return dp > dq;
    return p.first.first > q.first.first;
  });
  for (const auto& [e, c] : v) {
    std::string cs = c.str();
    bool neg = c.is_rational() && sgn(c.to_rational()) < 0;
    if (neg) cs = cs.substr(1);
    if (!c.is_rational()) cs = "(" + cs + ")";
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = (cs == "1");
    if (e.first == 0 && e.second == 0) {
      os << cs;
      continue;
    }
    bool need_star = false;
    if (!unit) {
      os << cs;
      need_star = true;
    }
    if (e.first > 0) {
      os << (need_star ? "*" : "") << xv;
      if (e.first > 1) os << "^" << e.first;
      need_star = true;
    }
    if (e.second > 0) {
      os << (need_star ? "*" : "") << yv;
      if (e.second > 1) os << "^" << e.second;
    }
  }
  return os.str();
}

std::optional<int> OneForm::order() const {
  auto oa = a.order(), ob = b.order();
  if (!oa) return ob;
  if (!ob) return oa;
  return std::min(*oa, *ob);
}

LinearPart OneForm::linear_part() const {
  LinearPart L;
  L.m11 = b.coeff(1, 0);
  L.m12 = b.coeff(0, 1);
  L.m21 = -a.coeff(1, 0);
  L.m22 = -a.coeff(0, 1);
  return L;
}

std::string OneForm::str(const std::string& xv, const std::string& yv) const {
  std::string s;
  if (!a.is_zero()) s += "(" + a.str(xv, yv) + ") d" + xv;
  if (!b.is_zero()) s += std::string(s.empty() ? "" : " + ") + "(" + b.str(xv, yv) + ") d" + yv;
  return s.empty() ? "0" : s;
}

std::optional<int> poly_order(const Poly2& p) { return p.order(); }

Poly2 tangent_cone(const OneForm& w) {
  auto nu = w.order();
  if (!nu) throw Error(Status::InvalidArg, "tangent cone of the zero form");
  const auto& f = common_field(w.a.field(), w.b.field());
  return w.a.homogeneous_part(*nu).mul_monomial(1, 0).lift(f) + w.b.homogeneous_part(*nu).mul_monomial(0, 1);
}

bool RatioClass::reduced_type() const {
  switch (tag) {
    case RatioTag::SaddleNodeCandidate:
    case RatioTag::IrrationalOrComplexRatio:
      return true;
    case RatioTag::RationalRatio:
      return sign < 0;
    default:
      return false;
  }
}

std::string RatioClass::str() const {
  switch (tag) {
    case RatioTag::BothZeroEigen:
      return "BothZeroEigen";
    case RatioTag::SaddleNodeCandidate:
      return "SaddleNodeCandidate";
    case RatioTag::RationalRatio:
      return std::string("RationalRatio(") + (sign < 0 ? "-" : "") + p.get_str() + "/" + q.get_str() + ")";
    default:
      return "IrrationalOrComplexRatio";
  }
}

RatioClass ratio_class(const FieldElem& trace, const FieldElem& det) {
  RatioClass rc;
  if (det.is_zero()) {
    rc.tag = trace.is_zero() ? RatioTag::BothZeroEigen : RatioTag::SaddleNodeCandidate;
    return rc;
  }
  FieldElem s = trace * trace / det;
  rc.s = s;
  if (!s.is_rational()) {
    rc.tag = RatioTag::IrrationalOrComplexRatio;
    return rc;
  }
  Rational sq = s.to_rational();
  auto w = perfect_square(sq * (sq - 4));
  if (!w) {
    rc.tag = RatioTag::IrrationalOrComplexRatio;
    return rc;
  }
  // r^2 + (2 - s) r + 1 = 0
  Rational r1 = ((sq - 2) + *w) / 2, r2 = ((sq - 2) - *w) / 2;
  Rational r = abs(r1) >= abs(r2) ? r1 : r2;
  r.canonicalize();
  rc.tag = RatioTag::RationalRatio;
  rc.sign = sgn(r) < 0 ? -1 : 1;
  Rational ar = abs(r);
  rc.p = ar.get_num();
  rc.q = ar.get_den();
  return rc;
}

}  // namespace foliage
