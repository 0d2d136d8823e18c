#include "foliage/invariants.hpp"

#include <algorithm>

#include "foliage/error.hpp"
#include "linalg.hpp"

namespace foliage {

const char* epsilon_name(EpsilonStatus e) {
  switch (e) {
    case EpsilonStatus::Certified0: return "certified-0";
    case EpsilonStatus::Certified1: return "certified-1";
    case EpsilonStatus::Probed1: return "probed-1";
    case EpsilonStatus::Assumed0: return "assumed-0";
    case EpsilonStatus::Unknown: return "unknown";
  }
  return "?";
}

SecondKindVerdict is_second_kind(const ReductionTree& tree) {
  SecondKindVerdict v;
  for (int id : tree.cime()) {
    const auto& p = tree.point(id);
    if (p.local && p.local->tangent_saddle_node()) {
      v.value = false;
      v.witnesses.push_back(id);
    }
  }
  return v;
}

bool is_semi_hyperbolic(const ReductionTree& tree) {
  for (int id : tree.cime()) {
    const auto& p = tree.point(id);
    if (p.local && p.local->kind == SingKind::SaddleNode) return false;
  }
  return true;
}

long delta_hat(const ReductionTree& tree) {
  long d = 0;
  for (const auto& p : tree.points)
    if (p.singular) d += static_cast<long>(p.orbit) * (p.nu - 1) * (p.nu - 2) / 2;
  return d;
}

MultiplicityFormula multiplicity_formula_check(const ReductionTree& tree) {
  MultiplicityFormula r;
  if (tree.has_dicritical() || tree.height == 0) {
    r.applicable = false;
    return r;
  }
  r.lhs = tree.point(0).nu + 1;
  for (int id : tree.cime()) {
    const InfNearPoint& m = tree.point(id);
    int eps = static_cast<int>(m.comps().size());
    if (m.comp_s >= 0)
      r.rhs += static_cast<long>(m.orbit) * tree.comp(m.comp_s).m_ideal *
               (milnor_along_branch(m.form, Axis::S) - eps + 1);
    if (m.comp_t >= 0)
      r.rhs += static_cast<long>(m.orbit) * tree.comp(m.comp_t).m_ideal *
               (milnor_along_branch(m.form, Axis::T) - eps + 1);
  }
  return r;
}

CrossCheck second_kind_crosscheck(const ReductionTree& tree, const SeparatrixModel& sep) {
  CrossCheck c;
  c.second_kind = is_second_kind(tree).value;
  c.nu0_omega = tree.point(0).nu;
  c.nu0_df = static_cast<int>(sep.nu0_df());
  c.nu_equal = c.nu0_omega == c.nu0_df;
  c.all_m_equal = true;
  c.some_m_equal = tree.comps.empty();
  bool all_strict = true;
  for (const auto& d : tree.comps) {
    c.m_omega[d.id] = d.m_omega;
    c.m_df[d.id] = static_cast<int>(sep.m_df(d.id));
    if (c.m_omega[d.id] == c.m_df[d.id]) {
      c.some_m_equal = true;
      all_strict = false;
    } else {
      c.all_m_equal = false;
    }
    if (c.m_omega[d.id] < c.m_df[d.id]) {
      all_strict = false;
      c.messages.push_back("D" + std::to_string(d.id) + ": m_omega below m_df");
    }
  }
  if (c.second_kind) {
    c.consistent = c.nu_equal && c.all_m_equal && c.some_m_equal;
  } else {
    c.consistent = !c.nu_equal && !c.some_m_equal && all_strict;
  }
  if (!c.consistent) c.messages.push_back("second-kind characterizations disagree");
  return c;
}

namespace {

// Y(g) - c g with Y = b d/dx - a d/dy the dual field and c = b_x - a_y;
// zero exactly when dg ^ w = g dw.
Poly2 factor_defect(const OneForm& w, const Poly2& c, const Poly2& g) {
  return w.b * g.dx() - w.a * g.dy() - c * g;
}

detail::SparseRow to_row(const Poly2& p, int offset) {
  detail::SparseRow r;
  for (const auto& [e, v] : p.terms()) r[offset + detail::monomial_index(e.first, e.second)] = v;
  return r;
}

Poly2 combine(const std::vector<Poly2>& basis, const detail::SparseRow& comb, const FieldPtr& f) {
  Poly2 out(f);
  for (const auto& [k, v] : comb) out += basis[k].scale(v);
  return out;
}

}  // namespace

EpsilonSearch epsilon_search(const OneForm& w, bool certified_red, int max_deg) {
  EpsilonSearch r;
  r.degree = max_deg;
  const FieldPtr& f = w.field();
  Poly2 c = w.b.dx() - w.a.dy();
  int deg_w = std::max(w.a.total_degree(), w.b.total_degree());
  // Unknown coefficients of P and Q, one per monomial of degree <= max_deg.
  std::vector<std::pair<Poly2, Poly2>> fields;
  std::vector<Poly2> contractions;
  for (int n = 0; n <= max_deg; ++n)
    for (int j = 0; j <= n; ++j) {
      Poly2 m = Poly2::monomial(FieldElem(f, Rational(1)), n - j, j);
      fields.push_back({m, Poly2(f)});
      fields.push_back({Poly2(f), m});
    }
  for (const auto& [P, Q] : fields) contractions.push_back(w.a * P + w.b * Q);
  detail::Echelon ech(f);
  std::vector<detail::SparseRow> kernel;
  for (size_t k = 0; k < fields.size(); ++k)
    if (auto comb = ech.add(to_row(factor_defect(w, c, contractions[k]), 0), static_cast<int>(k)))
      kernel.push_back(*comb);
  for (const auto& comb : kernel) {
    Poly2 g = combine(contractions, comb, f);
    if (g.is_zero()) continue;
    std::vector<Poly2> ps, qs;
    for (const auto& fq : fields) {
      ps.push_back(fq.first);
      qs.push_back(fq.second);
    }
    r.basic_field = std::make_pair(combine(ps, comb, f), combine(qs, comb, f));
    r.integrating_factor = g;
    break;
  }
  if (!r.integrating_factor) {
    // integrating factors vanishing at the origin, outside the ideal (a, b)
    int hdeg = max_deg + deg_w;
    std::vector<Poly2> monos;
    for (int n = 1; n <= hdeg; ++n)
      for (int j = 0; j <= n; ++j) monos.push_back(Poly2::monomial(FieldElem(f, Rational(1)), n - j, j));
    detail::Echelon e2(f);
    for (size_t k = 0; k < monos.size(); ++k)
      if (auto comb = e2.add(to_row(factor_defect(w, c, monos[k]), 0), static_cast<int>(k))) {
        r.integrating_factor = combine(monos, *comb, f);
        break;
      }
  }
  if (r.basic_field && certified_red) {
    r.status = EpsilonStatus::Certified0;
    r.note = "basic non-tangent field of degree <= " + std::to_string(max_deg) + " and a certified red vertex";
  } else if (!r.basic_field && r.integrating_factor) {
    r.status = EpsilonStatus::Probed1;
    r.note = "integrating factor found, no basic non-tangent field of degree <= " + std::to_string(max_deg);
  } else if (r.basic_field) {
    r.note = "basic non-tangent field found but no vertex is certified red";
  } else {
    r.note = "no integrating factor of degree <= " + std::to_string(max_deg + deg_w);
  }
  return r;
}

BetaBounds beta_bounds(long delta, long tau, EpsilonStatus eps, bool second_kind) {
  BetaBounds b;
  b.epsilon = eps;
  b.hi = delta + tau;
  if (eps == EpsilonStatus::Certified0 || eps == EpsilonStatus::Assumed0) {
    b.lo = b.hi;
  } else if (eps == EpsilonStatus::Certified1 && second_kind) {
    b.lo = b.hi = b.hi - 1;
  } else {
    b.lo = b.hi - 1;
  }
  b.lo = std::max(b.lo, 0L);
  return b;
}

}  // namespace foliage
