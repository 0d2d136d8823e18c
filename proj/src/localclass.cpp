#include "foliage/localclass.hpp"

#include "foliage/error.hpp"
#include "foliage/factor.hpp"
#include "foliage/invariants.hpp"
#include "linalg.hpp"

namespace foliage {

const char* kind_name(SingKind k) {
  switch (k) {
    case SingKind::NonResonant: return "NonResonant";
    case SingKind::ResonantProbed: return "ResonantProbed";
    case SingKind::ResonantObstructed: return "ResonantObstructed";
    case SingKind::SaddleNode: return "SaddleNode";
  }
  return "?";
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Certified: return "Certified";
    case Provenance::Probed: return "Probed";
    case Provenance::Annotated: return "Annotated";
    case Provenance::Assumed: return "Assumed";
    case Provenance::Unknown: return "Unknown";
  }
  return "?";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Unknown: return "Unknown";
  }
  return "?";
}

const char* alignment_name(Alignment a) {
  switch (a) {
    case Alignment::Transverse: return "Transverse";
    case Alignment::Tangent: return "Tangent";
    case Alignment::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::string ProbeResult::str() const {
  if (!obstructed) return "LinearizableUpTo(" + std::to_string(depth) + ")";
  return "ObstructedAt(" + std::to_string(k) + ", zeta=" + (zeta ? zeta->str() : "?") + ")";
}

bool ReducedSingularity::tangent_saddle_node() const {
  if (kind != SingKind::SaddleNode) return false;
  for (const auto& b : branches)
    if (b.alignment == Alignment::Tangent) return true;
  return false;
}

namespace {

// Coefficients c_0..c_n of the power series num/den, den(0) != 0.
std::vector<FieldElem> series_quotient(const UPoly& num, const UPoly& den, int n, const FieldPtr& f) {
  std::vector<FieldElem> out(n + 1, FieldElem(f));
  FieldElem d0inv = den.coeff(0).inv();
  for (int i = 0; i <= n; ++i) {
    FieldElem acc = i <= num.degree() ? num.coeff(i).lift(f) : FieldElem(f);
    for (int j = 1; j <= i && j <= den.degree(); ++j) acc -= den.coeff(j) * out[i - j];
    out[i] = acc * d0inv;
  }
  return out;
}

// -Res_{z=0} k(z)/a(z) dz.
FieldElem minus_residue(const UPoly& k, const UPoly& a, const FieldPtr& f) {
  int m = a.low_order();
  if (m < 0) throw Error(Status::NonIsolatedOnDivisor, "singular locus contains the branch");
  if (m == 0) return FieldElem(f);
  std::vector<FieldElem> alpha(a.coeffs().begin() + m, a.coeffs().end());
  UPoly al(f, alpha);
  auto s = series_quotient(k, al, m - 1, f);
  return -s[m - 1];
}

// Coefficient polynomial of s^1 (S axis) or t^1 (T axis) restricted to the other axis.
UPoly first_order_slice(const Poly2& p, Axis axis) {
  std::vector<FieldElem> v;
  for (const auto& [e, c] : p.terms()) {
    int lin = axis == Axis::S ? e.first : e.second;
    int other = axis == Axis::S ? e.second : e.first;
    if (lin != 1) continue;
    if (static_cast<int>(v.size()) <= other) v.resize(other + 1, FieldElem(p.field()));
    v[other] = c;
  }
  return UPoly(p.field(), v);
}

struct VField {
  Poly2 x1, x2;
};

VField bracket(const VField& Y, const VField& X, int N) {
  // [Y, X]_i = sum_j Y_j d_j X_i - X_j d_j Y_i
  auto comp = [&](const Poly2& Xi, const Poly2& Yi) {
    Poly2 r = Poly2::mul_trunc(Y.x1, Xi.dx(), N) + Poly2::mul_trunc(Y.x2, Xi.dy(), N);
    r -= Poly2::mul_trunc(X.x1, Yi.dx(), N) + Poly2::mul_trunc(X.x2, Yi.dy(), N);
    return r;
  };
  return {comp(X.x1, Y.x1), comp(X.x2, Y.x2)};
}

// Poincare-Dulac normalization of a vector field with linear part
// diag(q, -p), up to total degree N.
VField normalize(VField X, long p, long q, int N) {
  FieldPtr f = X.x1.field();
  for (int d = 2; d <= N; ++d) {
    VField Y{Poly2(f), Poly2(f)};
    for (const auto& [e, c] : X.x1.terms()) {
      if (e.first + e.second != d) continue;
      long delta = q * e.first - p * e.second - q;
      if (delta != 0) Y.x1.set(e.first, e.second, c / FieldElem(f, Rational(delta)));
    }
    for (const auto& [e, c] : X.x2.terms()) {
      if (e.first + e.second != d) continue;
      long delta = q * e.first - p * e.second + p;
      if (delta != 0) Y.x2.set(e.first, e.second, c / FieldElem(f, Rational(delta)));
    }
    if (Y.x1.is_zero() && Y.x2.is_zero()) continue;
    VField acc = X, term = X;
    for (int k = 1;; ++k) {
      term = bracket(Y, term, N);
      if (term.x1.is_zero() && term.x2.is_zero()) break;
      FieldElem inv(f, make_rational(1, k));
      term.x1 = term.x1.scale(inv);
      term.x2 = term.x2.scale(inv);
      acc.x1 += term.x1;
      acc.x2 += term.x2;
    }
    X = std::move(acc);
  }
  return X;
}

struct Diagonalized {
  VField X;
  FieldPtr field;
};

// Brings the dual field of w to linear part diag(q, -p).
Diagonalized diagonalize(const OneForm& w, long p, long q) {
  FieldPtr f = w.field();
  LinearPart lp = w.linear_part();
  FieldElem T = lp.trace(), D = lp.det();
  // eigenvalues l1, l2 with l2 = -(p/q) l1, so T = l1 (q - p)/q and D = -(p/q) l1^2
  FieldElem l1;
  if (p != q) {
    l1 = T * FieldElem(f, make_rational(q, q - p));
  } else {
    // l1^2 = -D
    FieldElem r = -D;
    UPoly m(f, {-r, FieldElem(f), FieldElem(f, Rational(1))});
    auto fac = factor_univariate(m);
    if (fac.size() == 1 && fac[0].second == 1) {
      f = extend_field(f, m, "e");
      l1 = FieldElem::generator(f);
    } else {
      const UPoly& lin = fac[0].first;
      l1 = -lin.coeff(0);
    }
  }
  FieldElem l2 = l1 * FieldElem(f, make_rational(-p, q));
  LinearPart L{lp.m11.lift(f), lp.m12.lift(f), lp.m21.lift(f), lp.m22.lift(f)};
  auto eigvec = [&](const FieldElem& l) -> std::pair<FieldElem, FieldElem> {
    if (!L.m12.is_zero()) return {L.m12, l - L.m11};
    if (!L.m21.is_zero()) return {l - L.m22, L.m21};
    if (l == L.m11) return {FieldElem(f, Rational(1)), FieldElem(f)};
    return {FieldElem(f), FieldElem(f, Rational(1))};
  };
  auto [e1x, e1y] = eigvec(l1);
  auto [e2x, e2y] = eigvec(l2);
  Poly2 V1 = w.b.lift(f), V2 = -w.a.lift(f);
  V1 = V1.linear_subs(e1x, e2x, e1y, e2y);
  V2 = V2.linear_subs(e1x, e2x, e1y, e2y);
  // inverse of [[e1x, e2x], [e1y, e2y]]
  FieldElem det = e1x * e2y - e2x * e1y;
  FieldElem scale = FieldElem(f, Rational(q)) / l1;
  FieldElem i11 = e2y / det * scale, i12 = -e2x / det * scale;
  FieldElem i21 = -e1y / det * scale, i22 = e1x / det * scale;
  VField X{V1.scale(i11) + V2.scale(i12), V1.scale(i21) + V2.scale(i22)};
  return {X, f};
}

// First resonant order k whose block cannot be removed, found by building a
// formal first integral x^p y^q + ... degree by degree; 0 when none up to K.
int greedy_obstruction(const VField& X, long p, long q, int K) {
  FieldPtr f = X.x1.field();
  int s = static_cast<int>(p + q);
  int D = (K + 1) * s;
  int top = D - s + 1;
  std::vector<Poly2> X1(top + 1, Poly2(f)), X2(top + 1, Poly2(f));
  for (const auto& [e, c] : X.x1.terms())
    if (e.first + e.second >= 2 && e.first + e.second <= top) X1[e.first + e.second].set(e.first, e.second, c);
  for (const auto& [e, c] : X.x2.terms())
    if (e.first + e.second >= 2 && e.first + e.second <= top) X2[e.first + e.second].set(e.first, e.second, c);
  std::vector<Poly2> F(D + 1, Poly2(f)), Fx(D + 1, Poly2(f)), Fy(D + 1, Poly2(f));
  F[s] = Poly2::monomial(FieldElem(f, Rational(1)), static_cast<int>(p), static_cast<int>(q));
  Fx[s] = F[s].dx();
  Fy[s] = F[s].dy();
  for (int d = s + 1; d <= D; ++d) {
    Poly2 R(f);
    for (int e = s; e < d; ++e) {
      int j = d - e + 1;
      if (j > top) continue;
      if (!X1[j].is_zero() && !Fx[e].is_zero()) R += X1[j] * Fx[e];
      if (!X2[j].is_zero() && !Fy[e].is_zero()) R += X2[j] * Fy[e];
    }
    Poly2 Fd(f);
    for (const auto& [e, c] : R.terms()) {
      long lam = q * e.first - p * e.second;
      if (lam == 0) return static_cast<int>(e.first / p) - 1;
      Fd.set(e.first, e.second, -c / FieldElem(f, Rational(lam)));
    }
    F[d] = Fd;
    Fx[d] = Fd.dx();
    Fy[d] = Fd.dy();
  }
  return 0;
}

}  // namespace

bool branch_invariant(const OneForm& w, Axis axis) {
  // {s = 0}: b(0, t) == 0;  {t = 0}: a(s, 0) == 0
  return axis == Axis::S ? w.b.restrict_x0().is_zero() : w.a.restrict_y0().is_zero();
}

int milnor_along_branch(const OneForm& w, Axis axis) {
  if (!branch_invariant(w, axis)) throw Error(Status::BranchNotInvariant, "branch is not invariant");
  UPoly r = axis == Axis::S ? w.a.restrict_x0() : w.b.restrict_y0();
  if (r.is_zero()) throw Error(Status::NonIsolatedOnDivisor, "singular locus contains the branch");
  return r.low_order();
}

FieldElem camacho_sad_index(const OneForm& w, Axis axis) {
  if (!branch_invariant(w, axis)) throw Error(Status::BranchNotInvariant, "branch is not invariant");
  if (axis == Axis::S) return minus_residue(first_order_slice(w.b, Axis::S), w.a.restrict_x0(), w.field());
  return minus_residue(first_order_slice(w.a, Axis::T), w.b.restrict_y0(), w.field());
}

Alignment saddle_node_tangency(const OneForm& w, Axis axis, bool divisor_singular) {
  LinearPart lp = w.linear_part();
  if (!lp.det().is_zero() || lp.trace().is_zero()) return Alignment::NotApplicable;
  if (divisor_singular) return Alignment::Tangent;
  return milnor_along_branch(w, axis) == 1 ? Alignment::Transverse : Alignment::Tangent;
}

std::optional<Poly2> find_first_integral(const OneForm& w, int max_deg) {
  FieldPtr f = w.field();
  detail::Echelon ech(f);
  std::vector<Exp2> monos;
  for (int d = 1; d <= max_deg; ++d) {
    for (int j = 0; j <= d; ++j) {
      int i = d - j;
      // d(x^i y^j) ^ w = (i x^(i-1) y^j b - j x^i y^(j-1) a) dx ^ dy
      Poly2 col(f);
      if (i > 0) col += w.b.mul_monomial(i - 1, j).scale(FieldElem(f, Rational(i)));
      if (j > 0) col -= w.a.mul_monomial(i, j - 1).scale(FieldElem(f, Rational(j)));
      detail::SparseRow row;
      for (const auto& [e, c] : col.terms()) row.emplace(detail::monomial_index(e.first, e.second), c);
      int tag = static_cast<int>(monos.size());
      monos.push_back({i, j});
      auto dep = ech.add(std::move(row), tag);
      if (dep) {
        Poly2 g(f);
        for (const auto& [t, c] : *dep) g.add_term(monos[t].first, monos[t].second, c);
        FieldElem lead = g.terms().rbegin()->second;
        g = g.scale(lead.inv());
        Poly2 check = g.dx() * w.b - g.dy() * w.a;
        if (!check.is_zero()) throw Error(Status::Internal, "first integral check failed");
        return g;
      }
    }
  }
  return std::nullopt;
}

ProbeResult linearizability_probe(const OneForm& w, const Integer& P, const Integer& Q, int K,
                                  bool full_normalization) {
  ProbeResult res;
  res.depth = K;
  if (K <= 0) return res;
  long p = P.get_si(), q = Q.get_si();
  Diagonalized dg = diagonalize(w, p, q);
  FieldPtr f = dg.field;
  auto run = [&](int depth) {
    int N = depth * static_cast<int>(p + q) + 1;
    VField X{dg.X.x1.truncate(N), dg.X.x2.truncate(N)};
    X = normalize(std::move(X), p, q, N);
    std::vector<FieldElem> A(depth + 1, FieldElem(f)), C(depth + 1, FieldElem(f));
    A[0] = FieldElem(f, Rational(q));
    for (int m = 1; m <= depth; ++m) {
      FieldElem am = X.x1.coeff(1 + m * p, m * q), bm = X.x2.coeff(m * p, 1 + m * q);
      A[m] = am;
      C[m] = am * FieldElem(f, Rational(p)) + bm * FieldElem(f, Rational(q));
    }
    return std::make_pair(A, C);
  };
  int k = 0;
  std::vector<FieldElem> A, C;
  if (full_normalization) {
    std::tie(A, C) = run(K);
    for (int m = 1; m <= K; ++m)
      if (!C[m].is_zero()) {
        k = m;
        break;
      }
    if (k == 0) return res;
    if (2 * k > K) std::tie(A, C) = run(2 * k);
  } else {
    k = greedy_obstruction(dg.X, p, q, K);
    if (k == 0) return res;
    std::tie(A, C) = run(2 * k);
    for (int m = 1; m < k; ++m)
      if (!C[m].is_zero()) throw Error(Status::Internal, "normal form disagrees with the first-integral obstruction");
    if (C[k].is_zero()) throw Error(Status::Internal, "normal form disagrees with the first-integral obstruction");
  }
  res.obstructed = true;
  res.k = k;
  // zeta = p * Res_{u=0} A(u) / (u^(k+1) C~(u)),  C~(u) = sum_{j>=k} c_j u^(j-k)
  std::vector<FieldElem> ct(C.begin() + k, C.begin() + 2 * k + 1);
  std::vector<FieldElem> av(A.begin(), A.begin() + k + 1);
  auto s = series_quotient(UPoly(f, av), UPoly(f, ct), k, f);
  FieldElem zeta = s[k] * FieldElem(f, Rational(p));
  if (p == q) {
    // Swapping the two separatrices replaces zeta by 1 - zeta; keep a fixed representative.
    FieldElem other = FieldElem(f, Rational(1)) - zeta;
    bool take_other = zeta.is_rational() && other.is_rational() ? other.to_rational() > zeta.to_rational()
                                                                : other.str() > zeta.str();
    if (take_other) zeta = other;
  }
  res.zeta = zeta;
  return res;
}

ReducedSingularity classify_reduced(const OneForm& w, const std::vector<Branch>& branches,
                                    const ClassifyConfig& cfg) {
  ReducedSingularity r;
  LinearPart lp = w.linear_part();
  r.ratio = ratio_class(lp.trace(), lp.det());
  if (!r.ratio.reduced_type()) throw Error(Status::NotReduced, "linear part is not of reduced type");
  for (const auto& br : branches)
    if (!branch_invariant(w, br.axis)) throw Error(Status::NotReduced, "divisor branch is not invariant");
  auto mu = milnor_number(w.a, w.b);
  r.mu = mu.ok() ? mu.value : -1;
  r.corner = branches.size() == 2;
  for (const auto& br : branches) {
    BranchData bd;
    bd.axis = br.axis;
    bd.comp = br.comp;
    bd.cs_index = camacho_sad_index(w, br.axis);
    bd.mu_along = milnor_along_branch(w, br.axis);
    r.branches.push_back(bd);
  }
  switch (r.ratio.tag) {
    case RatioTag::SaddleNodeCandidate:
      r.kind = SingKind::SaddleNode;
      r.sn_p = static_cast<int>(r.mu - 1);
      for (auto& bd : r.branches) {
        bd.weak = bd.mu_along > 1;
        bd.alignment = saddle_node_tangency(w, bd.axis, r.corner);
      }
      r.first_integral = Tri::No;
      r.fi_prov = Provenance::Certified;
      if (r.tangent_saddle_node()) {
        r.weak_periodic = Tri::Unknown;
        r.weak_prov = Provenance::Unknown;
      }
      break;
    case RatioTag::IrrationalOrComplexRatio:
      r.kind = SingKind::NonResonant;
      r.first_integral = Tri::No;
      r.fi_prov = Provenance::Certified;
      break;
    case RatioTag::RationalRatio: {
      // eigenvalues proportional to (q, -p)
      r.p = r.ratio.p;
      r.q = r.ratio.q;
      r.probe.depth = cfg.probe_depth;
      auto fi = find_first_integral(w, cfg.first_integral_degree);
      if (fi) {
        r.kind = SingKind::ResonantProbed;
        r.probe_implied = true;
        r.first_integral = Tri::Yes;
        r.fi_prov = Provenance::Certified;
        r.fi_certificate = *fi;
        break;
      }
      r.probe = linearizability_probe(w, r.p, r.q, cfg.probe_depth);
      if (r.probe.obstructed) {
        r.kind = SingKind::ResonantObstructed;
        r.first_integral = Tri::No;
        r.fi_prov = Provenance::Certified;
      } else {
        r.kind = SingKind::ResonantProbed;
        r.first_integral = Tri::Unknown;
        r.fi_prov = Provenance::Probed;
      }
      break;
    }
    case RatioTag::BothZeroEigen:
      break;
  }
  return r;
}

}  // namespace foliage
