#pragma once

// Shared fixtures for the test binaries: the golden corpus, a symbolic
// pullback oracle that recomputes divisor multiplicities by composing chart
// maps, random generators for nerves and nerve skeletons, and brute-force
// checks of the criterion on small nerves.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "foliage/nerve.hpp"
#include "foliage/parse.hpp"
#include "foliage/poly2.hpp"
#include "foliage/reduction.hpp"

namespace testing {

using namespace foliage;

struct CorpusEntry {
  std::string name;
  std::string form;
  std::string f;  // hamiltonian potential, empty for other forms
};

inline OneForm hamiltonian(const Poly2& f) { return {f.dx(), f.dy()}; }

// Reduced polynomials of degree <= 6 used as hamiltonians.
inline const std::vector<std::string>& hamiltonian_potentials() {
  static const std::vector<std::string> fs = {
      "y^2 - x^3",
      "x^2 - y^2",
      "x*y",
      "y^2 - x^5",
      "x^3 - y^3",
      "y^2 - 2*x^2",
      "(y^2 - x^3)*(y - x)",
      "y^3 - x^4",
      "y^2 - x^4",
      "x^4 + y^4",
      "y*(y^2 - x^3)",
      "x*y*(x + y)",
      "y^3 - x^5",
      "y^2 - x^3 - x^2",
      "(y^2 - x^3)*(y^2 - 2*x^3)",
      "x^5 - x*y^2 + y^5",
      "x*y*(x - y)*(x + 2*y)",
  };
  return fs;
}

inline OneForm hamiltonian_form(const std::string& f) { return hamiltonian(parse_poly(f)); }

// Non-dicritical forms beyond the hamiltonians.
inline const std::vector<CorpusEntry>& extra_forms() {
  static const std::vector<CorpusEntry> c = {
      {"cusp", "2*y dy - 3*x^2 dx", "y^2 - x^3"},
      {"saddle-node", "x dy + y^2 dx", ""},
      {"saddle 1:-2", "y dx + 2*x dy", ""},
      {"obstructed saddle", "y dx + x dy + x^3*y^2 dy", ""},
      {"nilpotent", "(x + y) dy - y dx", ""},
      {"tangent saddle-node", "(x^2 + y^2) dy - x*y dx", ""},
      {"perturbed cusp", "(y^2 - x^3) dx + x*y dy", ""},
      {"sqrt2 form", "(y^2 - 6*x^2) dx + 2*x*y dy", ""},
      {"degenerate saddle-node", "x*y*(y - x) dx + x^4 dy", ""},
  };
  return c;
}

inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& f : hamiltonian_potentials()) out.push_back({"d(" + f + ")", hamiltonian_form(f).str(), f});
  for (const auto& e : extra_forms()) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// symbolic pullback oracle

// p(X, Y) for polynomials X, Y over a common extension of p's field.
inline Poly2 substitute(const Poly2& p, const Poly2& X, const Poly2& Y) {
  const FieldPtr& K = X.field();
  Poly2 q = p.lift(K);
  std::map<int, Poly2> xp, yp;
  auto power = [&](std::map<int, Poly2>& cache, const Poly2& base, int n) -> const Poly2& {
    if (cache.empty()) cache.emplace(0, Poly2::constant(FieldElem(K, Rational(1))));
    int have = cache.rbegin()->first;
    while (have < n) {
      cache.emplace(have + 1, cache.at(have) * base);
      ++have;
    }
    return cache.at(n);
  };
  Poly2 out(K);
  for (const auto& [e, c] : q.terms()) out += (power(xp, X, e.first) * power(yp, Y, e.second)).scale(c);
  return out;
}

struct ChartMap {
  Poly2 X, Y;  // original coordinates in terms of the local ones
};

// Composite of chart substitutions from the origin to the point `id`.
inline ChartMap chart_map(const ReductionTree& t, int id) {
  const InfNearPoint& p = t.point(id);
  if (p.parent < 0) return {Poly2::x(Field::rationals()), Poly2::y(Field::rationals())};
  ChartMap par = chart_map(t, p.parent);
  const FieldPtr& K = p.field;
  Poly2 x = Poly2::x(K), y = Poly2::y(K);
  Poly2 sx, sy;
  if (p.chart == ChartKind::X) {
    sx = x;
    sy = x * (y + Poly2::constant(p.coord.lift(K)));
  } else {
    sx = x * y;
    sy = y;
  }
  return {substitute(par.X.lift(K), sx, sy), substitute(par.Y.lift(K), sx, sy)};
}

// Chart map of the X-chart of the blow-up of `creator`: the new divisor is {x = 0}.
inline ChartMap divisor_chart(const ReductionTree& t, int creator) {
  ChartMap m = chart_map(t, creator);
  const FieldPtr& K = t.point(creator).field;
  Poly2 x = Poly2::x(K), y = Poly2::y(K);
  return {substitute(m.X, x, x * y), substitute(m.Y, x, x * y)};
}

struct PullbackOrders {
  int m_omega = 0;
  int m_ideal = 0;
  std::optional<int> m_f;
};

inline PullbackOrders pullback_orders(const ReductionTree& t, int comp, const OneForm& w,
                                      const std::optional<Poly2>& f = std::nullopt) {
  const DivisorComp& d = t.comp(comp);
  ChartMap m = divisor_chart(t, d.creator);
  const FieldPtr& K = m.X.field();
  Poly2 a = substitute(w.a, m.X, m.Y), b = substitute(w.b, m.X, m.Y);
  Poly2 A = a * m.X.dx() + b * m.Y.dx();
  Poly2 B = a * m.X.dy() + b * m.Y.dy();
  PullbackOrders r;
  r.m_omega = std::min(A.x_adic_order(), B.x_adic_order());
  r.m_ideal = std::min(m.X.x_adic_order(), m.Y.x_adic_order());
  if (f) r.m_f = substitute(f->lift(K), m.X, m.Y).x_adic_order();
  return r;
}

// ---------------------------------------------------------------------------
// random nerves

// Random tree on n vertices as a parent array (parent[0] = -1).
inline std::vector<int> random_tree(int n, std::mt19937& rng) {
  std::vector<int> parent(n, -1);
  for (int v = 1; v < n; ++v) parent[v] = std::uniform_int_distribution<int>(0, v - 1)(rng);
  return parent;
}

// Bipartite tree nerve: types alternate with depth.  Colors are left to the caller.
inline Nerve nerve_shape(const std::vector<int>& parent, int root_type) {
  Nerve n;
  int sz = static_cast<int>(parent.size());
  std::vector<int> type(sz, root_type);
  for (int v = 1; v < sz; ++v) type[v] = 1 - type[parent[v]];
  for (int v = 0; v < sz; ++v) {
    NerveVertex x;
    x.id = v;
    x.type = type[v];
    x.label = (type[v] == 0 ? "p" : "D") + std::to_string(v);
    n.vertices.push_back(x);
  }
  for (int v = 1; v < sz; ++v) {
    NerveEdge e;
    int u = parent[v];
    e.v0 = type[v] == 0 ? v : u;
    e.v1 = type[v] == 0 ? u : v;
    n.edges.push_back(e);
  }
  return n;
}

inline void set_bij(NerveEdge& e, int v, bool bij) {
  (v == e.v0 ? e.bij0 : e.bij1) = bij ? Tri::Yes : Tri::No;
}

// Red edge arrows follow the endpoint weights.
inline void color_red_edge(NerveEdge& e, const Nerve& n) {
  e.color = Color::Red;
  e.color_prov = Provenance::Certified;
  e.bij0 = n.vertices[e.v0].weight == 1 ? Tri::Yes : Tri::No;
  e.bij1 = n.vertices[e.v1].weight == 1 ? Tri::Yes : Tri::No;
  e.bij_prov = Provenance::Certified;
}

// All vertices red with random weights.
inline Nerve random_red_nerve(std::mt19937& rng, int max_vertices = 12) {
  int sz = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  Nerve n = nerve_shape(random_tree(sz, rng), static_cast<int>(rng() % 2));
  for (auto& v : n.vertices) {
    v.color = Color::Red;
    v.color_prov = Provenance::Certified;
    v.weight = static_cast<int>(rng() % 2);
    v.weight_prov = Provenance::Certified;
  }
  for (auto& e : n.edges) color_red_edge(e, n);
  return n;
}

// Green edge arrows drawn from the configurations a-e of the edge lists:
// green-green single or double arrows, green-red arrows towards the green
// vertex or bijective on neither side, double arrows between red vertices.
inline void random_green_edge(NerveEdge& e, const Nerve& n, std::mt19937& rng) {
  e.color = Color::Green;
  e.color_prov = Provenance::Certified;
  e.bij_prov = Provenance::Certified;
  bool r0 = n.vertices[e.v0].color == Color::Red, r1 = n.vertices[e.v1].color == Color::Red;
  if (r0 && r1) {
    e.bij0 = e.bij1 = Tri::Yes;
  } else if (!r0 && !r1) {
    switch (rng() % 3) {
      case 0: e.bij0 = Tri::Yes, e.bij1 = Tri::No; break;
      case 1: e.bij0 = Tri::No, e.bij1 = Tri::Yes; break;
      default: e.bij0 = e.bij1 = Tri::Yes;
    }
  } else {
    int g = r0 ? e.v1 : e.v0, r = r0 ? e.v0 : e.v1;
    set_bij(e, g, rng() % 4 != 0);
    set_bij(e, r, false);
    if (rng() % 5 == 0) set_bij(e, r, true), set_bij(e, g, true);
  }
}

// Mixed colors; `p_green` is the probability of a green vertex.
inline Nerve random_mixed_nerve(std::mt19937& rng, double p_green, int max_vertices = 12) {
  int sz = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  Nerve n = nerve_shape(random_tree(sz, rng), static_cast<int>(rng() % 2));
  std::bernoulli_distribution green(p_green);
  for (auto& v : n.vertices) {
    v.color_prov = Provenance::Certified;
    if (green(rng)) {
      v.color = Color::Green;
    } else {
      v.color = Color::Red;
      v.weight = static_cast<int>(rng() % 2);
      v.weight_prov = Provenance::Certified;
    }
  }
  for (auto& e : n.edges) {
    bool both_red = n.vertices[e.v0].color == Color::Red && n.vertices[e.v1].color == Color::Red;
    if (both_red && rng() % 6 != 0) color_red_edge(e, n);
    else random_green_edge(e, n, rng);
  }
  return n;
}

// Attaches a green sécable branch at `attach`: a path of green vertices
// whose edges all point at the free end or are double arrows.
inline Nerve attach_green_branch(const Nerve& base, int attach, int length, std::mt19937& rng) {
  Nerve n = base;
  int prev = attach;
  for (int i = 0; i < length; ++i) {
    NerveVertex v;
    v.id = static_cast<int>(n.vertices.size());
    v.type = 1 - n.vertices[prev].type;
    v.color = Color::Green;
    v.color_prov = Provenance::Certified;
    v.label = (v.type == 0 ? "p" : "D") + std::to_string(v.id);
    n.vertices.push_back(v);
    NerveEdge e;
    e.v0 = v.type == 0 ? v.id : prev;
    e.v1 = v.type == 0 ? prev : v.id;
    e.color = Color::Green;
    e.color_prov = Provenance::Certified;
    e.bij_prov = Provenance::Certified;
    // towards the free end: bijective on the far side
    set_bij(e, v.id, true);
    bool from_red = n.vertices[prev].color == Color::Red;
    set_bij(e, prev, from_red ? false : rng() % 2 == 0);
    n.edges.push_back(e);
    prev = v.id;
  }
  return n;
}

// ---------------------------------------------------------------------------
// independent nerve oracles

inline bool is_red(const Nerve& n, int v) { return n.vertices[v].color == Color::Red; }

inline bool red_edge(const Nerve& n, const NerveEdge& e) {
  return e.color == Color::Red && is_red(n, e.v0) && is_red(n, e.v1);
}

// Components of the red part by union-find over red edges.
inline std::vector<std::vector<int>> oracle_red_components(const Nerve& n) {
  std::vector<int> up(n.vertices.size());
  std::iota(up.begin(), up.end(), 0);
  std::function<int(int)> find = [&](int v) { return up[v] == v ? v : up[v] = find(up[v]); };
  for (const auto& e : n.edges)
    if (red_edge(n, e)) up[find(e.v0)] = find(e.v1);
  std::map<int, std::vector<int>> groups;
  for (size_t v = 0; v < n.vertices.size(); ++v)
    if (is_red(n, static_cast<int>(v))) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto& [_, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

// Every edge outside K, oriented away from K, is bijective at its far end.
inline bool oracle_repulsive(const Nerve& n, const std::vector<int>& K) {
  std::vector<int> dist(n.vertices.size(), -1);
  std::deque<int> q;
  for (int v : K) dist[v] = 0, q.push_back(v);
  std::vector<std::vector<int>> adj(n.vertices.size());
  for (size_t i = 0; i < n.edges.size(); ++i) {
    adj[n.edges[i].v0].push_back(static_cast<int>(i));
    adj[n.edges[i].v1].push_back(static_cast<int>(i));
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int i : adj[v]) {
      int u = n.edges[i].other(v);
      if (dist[u] < 0) dist[u] = dist[v] + 1, q.push_back(u);
    }
  }
  for (const auto& e : n.edges) {
    if (dist[e.v0] == 0 && dist[e.v1] == 0) continue;
    int far = dist[e.v0] > dist[e.v1] ? e.v0 : e.v1;
    if (e.bijective_at(far) != Tri::Yes) return false;
  }
  return true;
}

// dim coker of the cochain map on the red subgraph spanned by `vs`, by exact
// elimination: rows are red edges, columns weight-1 vertices.
inline long oracle_coker(const Nerve& n, const std::vector<int>& vs) {
  std::set<int> in(vs.begin(), vs.end());
  std::vector<int> cols;
  std::map<int, int> col_of;
  for (int v : vs)
    if (n.vertices[v].weight == 1) col_of[v] = static_cast<int>(cols.size()), cols.push_back(v);
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : n.edges) {
    if (!red_edge(n, e) || !in.count(e.v0) || !in.count(e.v1)) continue;
    std::vector<Rational> r(cols.size(), 0);
    if (col_of.count(e.v0)) r[col_of[e.v0]] = 1;
    if (col_of.count(e.v1)) r[col_of[e.v1]] = -1;
    rows.push_back(r);
  }
  long rank = 0;
  for (size_t c = 0; c < cols.size() && rank < static_cast<long>(rows.size()); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<long>(r) == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (size_t k = 0; k < cols.size(); ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return static_cast<long>(rows.size()) - rank;
}

inline const NerveEdge* edge_between(const Nerve& n, int a, int b) {
  for (const auto& e : n.edges)
    if ((e.v0 == a && e.v1 == b) || (e.v0 == b && e.v1 == a)) return &e;
  return nullptr;
}

// Structural check of a witness path against the four shapes.
inline bool witness_ok(const Nerve& n, const Witness& w) {
  const auto& p = w.path;
  if (p.size() < 2) return false;
  if (std::set<int>(p.begin(), p.end()).size() != p.size()) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (!edge_between(n, p[i], p[i + 1])) return false;
  auto green = [&](int v) { return n.vertices[v].color == Color::Green; };
  auto interior_green = [&] {
    for (size_t i = 1; i + 1 < p.size(); ++i)
      if (!green(p[i])) return false;
    return true;
  };
  switch (w.type) {
    case 4: {
      if (p.size() != 2 || !is_red(n, p[0]) || !green(p[1])) return false;
      return edge_between(n, p[0], p[1])->arrow() == Arrow::Neither;
    }
    case 3:
      return p.size() == 2 && is_red(n, p[0]) && is_red(n, p[1]) &&
             edge_between(n, p[0], p[1])->color == Color::Green;
    case 2:
      return p.size() >= 3 && is_red(n, p.front()) && is_red(n, p.back()) && interior_green();
    case 1: {
      if (p.size() < 3 || !is_red(n, p.front()) || !green(p.back()) || !interior_green()) return false;
      const NerveEdge* last = edge_between(n, p[p.size() - 2], p.back());
      return last->bijective_at(p[p.size() - 2]) == Tri::Yes && last->bijective_at(p.back()) == Tri::No;
    }
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// random skeletons with non-degenerate local data

struct RandomSkeleton {
  NerveSkeleton sk;
  DualTree dt;  // the matching arrowed dual tree
};

inline RandomSkeleton random_skeleton(std::mt19937& rng, int max_comps = 9) {
  RandomSkeleton r;
  int nc = std::uniform_int_distribution<int>(1, max_comps)(rng);
  auto parent = random_tree(nc, rng);
  for (int c = 0; c < nc; ++c) {
    r.sk.comps.push_back({"D" + std::to_string(c), -1, 0});
    DualVertex dv;
    dv.comp = c;
    dv.label = "D" + std::to_string(c);
    r.dt.vertices.push_back(dv);
  }
  auto site = [&](std::vector<int> comps) {
    SkeletonSite s;
    s.label = "p" + std::to_string(r.sk.sites.size());
    s.comps = std::move(comps);
    switch (rng() % 4) {
      case 0: s.kind = SingKind::NonResonant, s.first_integral = Tri::No, s.fi_prov = Provenance::Certified; break;
      case 1:
        s.kind = SingKind::ResonantObstructed, s.first_integral = Tri::No, s.fi_prov = Provenance::Certified;
        break;
      case 2: s.kind = SingKind::ResonantProbed, s.first_integral = Tri::Unknown; break;
      default: s.kind = SingKind::SaddleNode, s.first_integral = Tri::No, s.fi_prov = Provenance::Certified;
    }
    r.sk.sites.push_back(s);
  };
  for (int c = 1; c < nc; ++c) {
    site({parent[c], c});
    r.dt.edges.push_back({parent[c], c});
  }
  for (int c = 0; c < nc; ++c) {
    // every component of a reduction meets at least two singular points
    int degree = 0;
    for (auto [a, b] : r.dt.edges) degree += (a == c) + (b == c);
    int arrows = std::uniform_int_distribution<int>(std::max(0, 2 - degree), 3)(rng);
    for (int k = 0; k < arrows; ++k) {
      site({c});
      r.dt.vertices[c].arrows++;
    }
  }
  return r;
}

// Chains counted independently: edges of the tree obtained by suppressing
// valence-2 vertices, restricted to pairs of valence >= 3 endpoints.
inline long chain_count_oracle(const DualTree& dt) {
  int n = static_cast<int>(dt.vertices.size());
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : dt.edges) adj[a].push_back(b), adj[b].push_back(a);
  std::vector<int> val(n);
  for (int v = 0; v < n; ++v) val[v] = static_cast<int>(adj[v].size()) + dt.vertices[v].arrows;
  long count = 0;
  // every valence >= 3 vertex as a start, walking each edge; count each pair once
  std::map<std::pair<int, int>, int> seen;
  for (int s = 0; s < n; ++s) {
    if (val[s] < 3) continue;
    for (int first : adj[s]) {
      int prev = s, cur = first;
      bool interior_ok = true;
      while (val[cur] < 3) {
        if (adj[cur].size() != 2 || val[cur] != 2) {
          interior_ok = false;
          break;
        }
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (interior_ok) seen[{std::min(s, cur), std::max(s, cur)}]++;
    }
  }
  for (const auto& [k, v] : seen) count += v / 2;
  return count;
}

}  // namespace testing
