#include "foliage/reduction.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <sstream>

#include "foliage/error.hpp"
#include "foliage/factor.hpp"
#include "foliage/invariants.hpp"

namespace foliage {

const char* chart_name(ChartKind c) {
  switch (c) {
    case ChartKind::Origin: return "origin";
    case ChartKind::X: return "X";
    case ChartKind::Y: return "Y";
  }
  return "?";
}

std::vector<int> InfNearPoint::comps() const {
  std::vector<int> out;
  if (comp_s >= 0) out.push_back(comp_s);
  if (comp_t >= 0) out.push_back(comp_t);
  return out;
}

std::vector<int> ReductionTree::cime() const {
  std::vector<int> out;
  for (const auto& p : points)
    if (!p.blown_up && p.singular) out.push_back(p.id);
  return out;
}

std::vector<int> ReductionTree::final_points() const {
  std::vector<int> out;
  for (const auto& p : points)
    if (!p.blown_up) out.push_back(p.id);
  return out;
}

bool ReductionTree::has_dicritical() const {
  return std::any_of(comps.begin(), comps.end(), [](const DivisorComp& d) { return d.dicritical; });
}

BlowUpResult blow_up(const OneForm& w, ChartKind chart) {
  auto nu = w.order();
  if (!nu) throw Error(Status::InvalidArg, "blow-up of the zero form");
  BlowUpResult r;
  r.dicritical = tangent_cone(w).is_zero();
  r.k = r.dicritical ? *nu + 1 : *nu;
  if (chart == ChartKind::X) {
    // x = u, y = u v
    Poly2 a = w.a.chart_x(), b = w.b.chart_x();
    r.strict.a = (a + b.mul_monomial(0, 1)).div_x_pow(r.k);
    r.strict.b = b.mul_monomial(1, 0).div_x_pow(r.k);
  } else if (chart == ChartKind::Y) {
    // x = u v, y = v
    Poly2 a = w.a.chart_y(), b = w.b.chart_y();
    r.strict.a = a.mul_monomial(0, 1).div_y_pow(r.k);
    r.strict.b = (a.mul_monomial(1, 0) + b).div_y_pow(r.k);
  } else {
    throw Error(Status::InvalidArg, "blow-up needs a chart");
  }
  return r;
}

bool couple_reduced(const OneForm& w, bool has_s, bool has_t, bool pre_reduction) {
  bool singular = w.a.coeff(0, 0).is_zero() && w.b.coeff(0, 0).is_zero();
  bool inv_s = !has_s || branch_invariant(w, Axis::S);
  bool inv_t = !has_t || branch_invariant(w, Axis::T);
  if (!singular) {
    // the branch {s = 0} is transverse when b(0,0) != 0, {t = 0} when a(0,0) != 0
    bool ok_s = !has_s || inv_s || !w.b.coeff(0, 0).is_zero();
    bool ok_t = !has_t || inv_t || !w.a.coeff(0, 0).is_zero();
    return ok_s && ok_t;
  }
  if (!inv_s || !inv_t) return false;
  LinearPart lp = w.linear_part();
  if (pre_reduction) {
    FieldElem T = lp.trace();
    return !(T * T - FieldElem(4) * lp.det()).is_zero();
  }
  return ratio_class(lp.trace(), lp.det()).reduced_type();
}

namespace {

OneForm saturate(const OneForm& w, bool& changed) {
  changed = false;
  if (w.a.is_zero() || w.b.is_zero()) {
    // a common factor of a single nonzero coefficient is the coefficient itself
    const Poly2& c = w.a.is_zero() ? w.b : w.a;
    if (c.total_degree() == 0) return w;
    changed = true;
    Poly2 one = Poly2::constant(FieldElem(c.field(), Rational(1)));
    return w.a.is_zero() ? OneForm{Poly2(c.field()), one} : OneForm{one, Poly2(c.field())};
  }
  Poly2 g = poly_gcd(w.a, w.b);
  if (g.total_degree() <= 0) return w;
  changed = true;
  return {poly_exact_div(w.a, g), poly_exact_div(w.b, g)};
}

struct Builder {
  ReductionTree& t;
  const ReduceConfig& cfg;
  std::deque<int> queue;

  void finish_point(InfNearPoint& q) {
    auto o = q.form.order();
    q.nu = o ? *o : 0;
    q.singular = q.nu >= 1;
    q.reduced = couple_reduced(q.form, q.comp_s >= 0, q.comp_t >= 0, cfg.pre_reduction);
  }

  void add_point(InfNearPoint q) {
    finish_point(q);
    if (!q.singular && q.reduced && !q.corner()) return;
    q.id = static_cast<int>(t.points.size());
    for (int d : q.comps()) t.comps[d].points.push_back(q.id);
    if (!q.reduced) queue.push_back(q.id);
    t.points.push_back(std::move(q));
  }

  void blow(int cid) {
    const InfNearPoint c = t.points[cid];
    if (c.height >= cfg.max_height)
      throw Error(Status::HeightLimit, "height limit " + std::to_string(cfg.max_height) + " exceeded at p" +
                                           std::to_string(cid));
    BlowUpResult bx = blow_up(c.form, ChartKind::X);
    BlowUpResult by = blow_up(c.form, ChartKind::Y);
    if (bx.dicritical) {
      std::string msg = "dicritical blow-up at p" + std::to_string(cid);
      if (cfg.dicritical == DicriticalPolicy::Abort) throw Error(Status::Dicritical, msg);
      t.dicritical_log.push_back(msg);
    }
    DivisorComp E;
    E.id = static_cast<int>(t.comps.size());
    E.creator = cid;
    E.dicritical = bx.dicritical;
    E.orbit = c.orbit;
    E.field = c.field;
    E.m_omega = bx.k;
    E.m_ideal = cid == 0 ? 1 : 0;
    for (int d : c.comps()) {
      t.comps[d].e -= c.orbit / t.comps[d].orbit;
      E.m_omega += t.comps[d].m_omega;
      E.m_ideal += t.comps[d].m_ideal;
    }
    t.comps.push_back(E);
    {
      InfNearPoint& cm = t.points[cid];
      cm.blown_up = true;
      cm.division_exponent = bx.k;
      cm.created = E.id;
    }
    t.height = std::max(t.height, c.height + 1);

    auto base = [&](ChartKind kind) {
      InfNearPoint q;
      q.height = c.height + 1;
      q.parent = cid;
      q.chart = kind;
      q.path = c.path;
      q.path.push_back(kind);
      q.proximate.push_back(cid);
      return q;
    };
    auto add_proximity = [&](InfNearPoint& q) {
      for (int d : q.comps())
        if (d != E.id) q.proximate.push_back(t.comps[d].creator);
      std::sort(q.proximate.begin(), q.proximate.end());
      q.proximate.erase(std::unique(q.proximate.begin(), q.proximate.end()), q.proximate.end());
    };

    // X-chart: E = {u = 0}
    UPoly U = bx.dicritical ? bx.strict.b.restrict_x0() : bx.strict.a.restrict_x0();
    if (U.is_zero()) throw Error(Status::NonIsolatedOnDivisor, "strict form vanishes on the divisor");
    bool zero_root = false;
    if (U.degree() > 0) {
      for (const auto& [fac, mult] : factor_univariate(U)) {
        InfNearPoint q = base(ChartKind::X);
        q.factor = fac;
        if (fac.degree() == 1) {
          q.field = c.field;
          q.coord = -fac.coeff(0);
        } else {
          std::string gen = "a" + std::to_string(t.fields.size() + 1);
          q.field = extend_field(c.field, fac, gen);
          t.fields.push_back(q.field);
          q.coord = FieldElem::generator(q.field);
        }
        q.orbit_rel = fac.degree();
        q.orbit = c.orbit * q.orbit_rel;
        if (q.coord.is_zero()) zero_root = true;
        q.form = bx.strict.lift(q.field);
        q.form = {q.form.a.translate(FieldElem(q.field), q.coord), q.form.b.translate(FieldElem(q.field), q.coord)};
        q.comp_s = E.id;
        q.comp_t = q.coord.is_zero() ? c.comp_t : -1;
        add_proximity(q);
        add_point(std::move(q));
      }
    }
    if (!zero_root && c.comp_t >= 0) {
      InfNearPoint q = base(ChartKind::X);
      q.field = c.field;
      q.coord = FieldElem(c.field);
      q.factor = UPoly::x(c.field);
      q.form = bx.strict;
      q.comp_s = E.id;
      q.comp_t = c.comp_t;
      add_proximity(q);
      add_point(std::move(q));
    }
    // Y-chart origin: E = {v = 0}
    InfNearPoint q = base(ChartKind::Y);
    q.field = c.field;
    q.coord = FieldElem(c.field);
    q.form = by.strict;
    q.comp_s = c.comp_s;
    q.comp_t = E.id;
    add_proximity(q);
    add_point(std::move(q));
  }
};

}  // namespace

ReductionTree reduce(const OneForm& w, const ReduceConfig& cfg) {
  if (w.is_zero()) throw Error(Status::InvalidArg, "the zero form defines no foliation");
  ReductionTree t;
  t.original = w;
  t.pre_reduction = cfg.pre_reduction;
  bool changed = false;
  t.input = saturate(w, changed);
  t.saturated = changed;
  if (!t.input.a.coeff(0, 0).is_zero() || !t.input.b.coeff(0, 0).is_zero()) {
    bool orig_singular = w.a.coeff(0, 0).is_zero() && w.b.coeff(0, 0).is_zero();
    if (orig_singular)
      throw Error(Status::NotIsolated, "singular locus is a curve through the origin");
    throw Error(Status::InvalidArg, "the form is regular at the origin");
  }
  auto mu = milnor_number(t.input.a, t.input.b);
  if (mu.code == MilnorResult::Code::NotIsolated) throw Error(Status::NotIsolated, "singularity is not isolated");

  InfNearPoint o;
  o.field = t.input.field();
  o.coord = FieldElem(o.field);
  o.form = t.input;
  Builder b{t, cfg, {}};
  b.finish_point(o);
  o.id = 0;
  t.points.push_back(o);
  if (!o.reduced) b.queue.push_back(0);
  while (!b.queue.empty()) {
    int id = b.queue.front();
    b.queue.pop_front();
    b.blow(id);
  }
  if (cfg.classify) classify_tree(t, cfg.local);
  return t;
}

ReductionTree pre_reduce(const OneForm& w, ReduceConfig cfg) {
  cfg.pre_reduction = true;
  return reduce(w, cfg);
}

void classify_tree(ReductionTree& tree, const ClassifyConfig& cfg) {
  for (int id : tree.cime()) {
    InfNearPoint& p = tree.points[id];
    LinearPart lp = p.form.linear_part();
    if (!ratio_class(lp.trace(), lp.det()).reduced_type()) continue;
    if (p.comp_s >= 0 && !branch_invariant(p.form, Axis::S)) continue;
    if (p.comp_t >= 0 && !branch_invariant(p.form, Axis::T)) continue;
    std::vector<Branch> br;
    if (p.comp_s >= 0) br.push_back({Axis::S, p.comp_s});
    if (p.comp_t >= 0) br.push_back({Axis::T, p.comp_t});
    p.local = classify_reduced(p.form, br, cfg);
  }
}

RecurrenceReport multiplicity_recurrence_check(const ReductionTree& tree) {
  RecurrenceReport r;
  std::map<int, int> m;
  for (const auto& c : tree.comps) {
    const InfNearPoint& p = tree.point(c.creator);
    int v = p.nu + (c.dicritical ? 1 : 0);
    for (int d : p.comps()) v += m.at(d);
    m[c.id] = v;
    if (v != c.m_omega) {
      r.ok = false;
      r.offending.push_back(c.id);
    }
  }
  r.recomputed = m;
  return r;
}

std::string GeoComp::label() const {
  return "D" + std::to_string(comp) + (copy > 0 ? "#" + std::to_string(copy) : "");
}

std::string GeoPoint::label() const {
  return "p" + std::to_string(point) + (copy > 0 ? "#" + std::to_string(copy) : "");
}

GeoTree expand(const ReductionTree& tree) {
  GeoTree g;
  for (const auto& c : tree.comps)
    for (int i = 0; i < c.orbit; ++i) {
      g.comp_index[{c.id, i}] = static_cast<int>(g.comps.size());
      g.comps.push_back({c.id, i});
    }
  for (const auto& p : tree.points) {
    for (int i = 0; i < p.orbit; ++i) {
      GeoPoint gp{p.id, i, -1, -1};
      if (p.parent >= 0) {
        const InfNearPoint& c = tree.point(p.parent);
        int pc = i / p.orbit_rel;
        const GeoPoint& parent = g.points[g.point_index.at({c.id, pc})];
        int e = g.comp_index.at({c.created, pc});
        if (p.chart == ChartKind::X) {
          gp.comp_s = e;
          gp.comp_t = p.comp_t >= 0 ? parent.comp_t : -1;
        } else {
          gp.comp_s = p.comp_s >= 0 ? parent.comp_s : -1;
          gp.comp_t = e;
        }
      }
      g.point_index[{p.id, i}] = static_cast<int>(g.points.size());
      g.points.push_back(gp);
    }
  }
  return g;
}

std::vector<std::vector<int>> DualTree::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

namespace {

std::string hex64(uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 15];
    h >>= 4;
  }
  return s;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

DualTree dual_tree(const ReductionTree& tree) {
  DualTree dt;
  GeoTree g = expand(tree);
  for (const auto& gc : g.comps) {
    const DivisorComp& c = tree.comp(gc.comp);
    DualVertex v;
    v.comp = gc.comp;
    v.copy = gc.copy;
    v.e = c.e;
    v.m_omega = c.m_omega;
    v.dicritical = c.dicritical;
    v.label = gc.label();
    dt.vertices.push_back(v);
  }
  for (size_t i = 0; i < g.points.size(); ++i) {
    const GeoPoint& gp = g.points[i];
    const InfNearPoint& p = tree.point(gp.point);
    if (p.blown_up) continue;
    if (gp.comp_s >= 0 && gp.comp_t >= 0) {
      dt.edges.emplace_back(std::min(gp.comp_s, gp.comp_t), std::max(gp.comp_s, gp.comp_t));
    } else if (p.singular && (gp.comp_s >= 0 || gp.comp_t >= 0)) {
      int v = gp.comp_s >= 0 ? gp.comp_s : gp.comp_t;
      dt.arrows.emplace_back(v, static_cast<int>(i));
      dt.vertices[v].arrows++;
    }
  }
  std::sort(dt.edges.begin(), dt.edges.end());
  // canonical form of the labelled tree rooted at its center(s)
  size_t n = dt.vertices.size();
  if (n > 0) {
    auto adj = dt.adjacency();
    std::vector<int> deg(n);
    std::vector<int> layer, rest;
    for (size_t i = 0; i < n; ++i) {
      deg[i] = static_cast<int>(adj[i].size());
      if (deg[i] <= 1) layer.push_back(static_cast<int>(i));
    }
    size_t remaining = n;
    while (remaining > 2) {
      std::vector<int> next;
      remaining -= layer.size();
      for (int v : layer)
        for (int u : adj[v])
          if (--deg[u] == 1) next.push_back(u);
      layer = next;
    }
    std::function<std::string(int, int)> canon = [&](int v, int parent) {
      const DualVertex& x = dt.vertices[v];
      std::vector<std::string> kids;
      for (int u : adj[v])
        if (u != parent) kids.push_back(canon(u, v));
      std::sort(kids.begin(), kids.end());
      std::string s = "(" + std::to_string(x.e) + "," + std::to_string(x.m_omega) + "," +
                      std::to_string(x.arrows) + (x.dicritical ? ",d" : "");
      for (const auto& k : kids) s += k;
      return s + ")";
    };
    std::string best;
    for (size_t i = 0; i < layer.size(); ++i) {
      std::string s = canon(layer[i], -1);
      if (i == 0 || s < best) best = s;
    }
    dt.canonical = best;
  }
  dt.hash = hex64(fnv1a(dt.canonical));
  return dt;
}

Integer determinacy_bound(int v, int h) {
  if (v < 1 || h < 1) throw Error(Status::InvalidArg, "determinacy bound needs v, h >= 1");
  Integer s1 = v + 1, s2 = 2 * v + 1;
  if (h == 1) return s1;
  for (int k = 1; k + 2 <= h; ++k) {
    Integer s3 = s2 + s1 + v + k;
    s1 = s2;
    s2 = s3;
  }
  return s2;
}

}  // namespace foliage
