#include "foliage/factor.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "foliage/error.hpp"

namespace foliage {

namespace {

using ZPoly = std::vector<Integer>;  // low to high, trimmed

void ztrim(ZPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

// ---- arithmetic in F_P[x] --------------------------------------------------

struct ModP {
  Integer P;

  Integer red(const Integer& a) const {
    Integer r = a % P;
    if (sgn(r) < 0) r += P;
    return r;
  }
  Integer inv(const Integer& a) const {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t()) == 0)
      throw Error(Status::Internal, "non-invertible residue");
    return r;
  }
  ZPoly norm(ZPoly p) const {
    for (auto& c : p) c = red(c);
    ztrim(p);
    return p;
  }
  ZPoly sub(const ZPoly& a, const ZPoly& b) const {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return norm(r);
  }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return norm(r);
  }
  ZPoly monic(const ZPoly& a) const {
    if (a.empty()) return a;
    Integer s = inv(a.back());
    ZPoly r = a;
    for (auto& c : r) c = red(c * s);
    return r;
  }
  std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b) const {
    ZPoly r = a;
    int db = zdeg(b);
    Integer li = inv(b.back());
    ZPoly q(std::max(zdeg(a) - db + 1, 0));
    for (int k = zdeg(r); k >= db; --k) {
      Integer t = red(r[k] * li);
      if (sgn(t) == 0) continue;
      q[k - db] = t;
      for (int i = 0; i <= db; ++i) r[k - db + i] = red(r[k - db + i] - t * b[i]);
    }
    return {norm(q), norm(r)};
  }
  ZPoly mod(const ZPoly& a, const ZPoly& b) const { return divmod(a, b).second; }
  ZPoly gcd(ZPoly a, ZPoly b) const {
    while (!b.empty()) {
      ZPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  ZPoly powmod(ZPoly base, Integer e, const ZPoly& m) const {
    ZPoly r = {Integer(1)};
    base = mod(base, m);
    while (sgn(e) > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, base), m);
      base = mod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }
};

// Cantor-Zassenhaus: all monic irreducible factors of a monic square-free f.
std::vector<ZPoly> factor_mod_p(const ZPoly& f0, const ModP& F) {
  std::vector<ZPoly> out;
  ZPoly f = F.monic(f0);
  // distinct-degree split
  std::vector<std::pair<ZPoly, int>> dd;
  ZPoly h = {Integer(0), Integer(1)};
  ZPoly x = h;
  for (int d = 1; 2 * d <= zdeg(f); ++d) {
    h = F.powmod(h, F.P, f);
    ZPoly g = F.gcd(f, F.sub(h, x));
    if (zdeg(g) > 0) {
      dd.emplace_back(g, d);
      f = F.divmod(f, g).first;
      h = F.mod(h, f);
    }
  }
  if (zdeg(f) > 0) dd.emplace_back(f, zdeg(f));
  std::mt19937_64 rng(0x5eed1234ULL);
  auto random_poly = [&](int deg) {
    ZPoly r(deg + 1);
    for (auto& c : r) {
      Integer v = 0;
      for (int w = 0; w < 4; ++w) v = (v << 64) + Integer(std::to_string(rng()));
      c = F.red(v);
    }
    return F.norm(r);
  };
  std::function<void(const ZPoly&, int)> edf = [&](const ZPoly& g, int d) {
    if (zdeg(g) == d) {
      out.push_back(F.monic(g));
      return;
    }
    Integer e;
    mpz_pow_ui(e.get_mpz_t(), F.P.get_mpz_t(), d);
    e = (e - 1) / 2;
    for (;;) {
      ZPoly r = random_poly(zdeg(g) - 1);
      if (zdeg(r) < 1) continue;
      ZPoly t = F.powmod(r, e, g);
      t = F.sub(t, {Integer(1)});
      ZPoly s = F.gcd(g, t);
      if (zdeg(s) > 0 && zdeg(s) < zdeg(g)) {
        edf(s, d);
        edf(F.divmod(g, s).first, d);
        return;
      }
    }
  };
  for (auto& [g, d] : dd) edf(g, d);
  return out;
}

ZPoly zderiv(const ZPoly& p) {
  ZPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<unsigned long>(i));
  ztrim(r);
  return r;
}

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly p) {
  Integer g = content(p);
  if (sgn(g) == 0) return p;
  if (sgn(p.back()) < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// Exact division over Z; returns false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  int db = zdeg(b);
  q.assign(std::max(zdeg(a) - db + 1, 0), Integer(0));
  for (int k = zdeg(r); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return false;
    Integer t = r[k] / b.back();
    q[k - db] = t;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= t * b[i];
  }
  for (const auto& c : r)
    if (sgn(c) != 0) return false;
  ztrim(q);
  return true;
}

UPoly zpoly_to_upoly(const ZPoly& p) {
  std::vector<Rational> c;
  for (const auto& z : p) c.emplace_back(z);
  return UPoly::from_rationals(c);
}

// Factor a monic square-free polynomial over Q.
std::vector<UPoly> factor_sqf_rational(const UPoly& p) {
  if (p.degree() <= 1) return {p.monic()};
  Integer den = 1;
  for (const auto& c : p.coeffs()) {
    Integer d = c.to_rational().get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  ZPoly z;
  for (const auto& c : p.coeffs()) {
    Rational q = c.to_rational() * den;
    z.push_back(q.get_num());
  }
  z = primitive(z);
  std::vector<UPoly> out;
  for (auto& g : factor_squarefree_integer(z)) out.push_back(zpoly_to_upoly(g).monic());
  return out;
}

std::vector<UPoly> factor_sqf(const UPoly& p);

// Trager's algorithm for a monic square-free p over an extension field.
std::vector<UPoly> factor_sqf_extension(const UPoly& p) {
  const FieldPtr& K = p.field();
  if (p.degree() <= 1) return {p.monic()};
  FieldElem alpha = FieldElem::generator(K);
  for (long s = 0;; s = (s <= 0) ? 1 - s : -s) {
    UPoly q = p.shift(alpha * FieldElem(-s));  // p(x - s*alpha)
    UPoly N = norm_down(q);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    std::vector<UPoly> out;
    for (const auto& Ni : factor_sqf(N)) {
      UPoly g = gcd(q, Ni.lift(K));
      out.push_back(g.shift(alpha * FieldElem(s)).monic());
    }
    return out;
  }
}

std::vector<UPoly> factor_sqf(const UPoly& p) {
  if (p.field()->is_rationals()) return factor_sqf_rational(p);
  return factor_sqf_extension(p);
}

}  // namespace

std::vector<std::vector<Integer>> factor_squarefree_integer(const std::vector<Integer>& f0) {
  ZPoly f = f0;
  ztrim(f);
  f = primitive(f);
  std::vector<ZPoly> result;
  // Pull out powers of x first so that f(0) != 0.
  while (zdeg(f) > 0 && sgn(f[0]) == 0) {
    result.push_back({Integer(0), Integer(1)});
    f.erase(f.begin());
  }
  if (zdeg(f) <= 0) return result;
  if (zdeg(f) == 1) {
    result.push_back(f);
    return result;
  }
  const int n = zdeg(f);
  // Mignotte-style bound on coefficients of any factor.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer nrm;
  mpz_sqrt(nrm.get_mpz_t(), norm2.get_mpz_t());
  nrm += 1;
  Integer B = (Integer(1) << n) * nrm * abs(f.back());
  Integer P = 2 * B + 1;
  ZPoly df = zderiv(f);
  for (;;) {
    mpz_nextprime(P.get_mpz_t(), P.get_mpz_t());
    if (mpz_divisible_p(f.back().get_mpz_t(), P.get_mpz_t())) continue;
    ModP F{P};
    ZPoly fm = F.norm(f), dm = F.norm(df);
    if (zdeg(F.gcd(fm, dm)) > 0) continue;
    break;
  }
  ModP F{P};
  std::vector<ZPoly> modf = factor_mod_p(f, F);
  std::sort(modf.begin(), modf.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
  });
  auto symmetric = [&](ZPoly p) {
    Integer half = P / 2;
    for (auto& c : p) {
      c = F.red(c);
      if (c > half) c -= P;
    }
    ztrim(p);
    return p;
  };
  // Subset recombination.
  int s = 1;
  while (2 * s <= static_cast<int>(modf.size())) {
    bool found = false;
    const int r = static_cast<int>(modf.size());
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly g = {F.red(f.back())};
      for (int i : idx) g = F.mul(g, modf[i]);
      g = primitive(symmetric(g));
      ZPoly q;
      if (zdeg(g) > 0 && zdivides(f, g, q)) {
        result.push_back(g);
        f = primitive(q);
        std::vector<ZPoly> rest;
        for (int i = 0; i < r; ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(modf[i]);
        modf = rest;
        found = true;
        break;
      }
      int k = s - 1;
      while (k >= 0 && idx[k] == r - s + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(f) > 0) result.push_back(f);
  return result;
}

UPoly norm_down(const UPoly& p) {
  const FieldPtr& K = p.field();
  if (K->is_rationals()) return p;
  const FieldPtr& Kp = K->parent;
  const int D = Kp->dim;
  std::vector<FieldElem> mc;
  for (const auto& c : K->minpoly) mc.push_back(c);
  UPoly m(Kp, mc);
  const int n = p.degree() * K->degree;
  std::vector<FieldElem> xs, ys;
  for (int j = 0; j <= n; ++j) {
    FieldElem xj(K, Rational(j));
    FieldElem v = p.eval(xj);
    std::vector<FieldElem> rep;
    for (int k = 0; k < K->degree; ++k)
      rep.emplace_back(Kp, std::vector<Rational>(v.coords().begin() + k * D, v.coords().begin() + (k + 1) * D));
    xs.emplace_back(Kp, Rational(j));
    ys.push_back(resultant(m, UPoly(Kp, rep)));
  }
  return interpolate(xs, ys, Kp);
}

std::vector<std::pair<UPoly, int>> factor_univariate(const UPoly& p) {
  if (p.is_zero()) throw Error(Status::InvalidArg, "factor of the zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  for (const auto& [g, mult] : squarefree(p))
    for (const auto& h : factor_sqf(g)) out.emplace_back(h, mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.str() < b.first.str();
  });
  return out;
}

FieldPtr extend_field(const FieldPtr& base, const UPoly& minpoly, const std::string& gen) {
  UPoly m = minpoly.lift(common_field(base, minpoly.field()));
  if (m.field() != base) throw Error(Status::InvalidArg, "minimal polynomial over a larger field");
  if (m.degree() < 2)
    throw Error(Status::ReducibleMinpoly, "minimal polynomial of degree < 2 (use substitution)");
  auto fac = factor_univariate(m);
  if (fac.size() != 1 || fac[0].second != 1)
    throw Error(Status::ReducibleMinpoly, "minimal polynomial " + m.str() + " is reducible");
  return make_extension_unchecked(base, m.monic().coeffs(), gen);
}

}  // namespace foliage
