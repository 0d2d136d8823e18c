#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "foliage/error.hpp"
#include "foliage/factor.hpp"
#include "foliage/parse.hpp"
#include "foliage/reduction.hpp"
#include "foliage/serialize.hpp"
#include "support.hpp"

using namespace foliage;
using testing::corpus;

namespace {

std::multiset<int> self_intersections(const ReductionTree& t) {
  std::multiset<int> e;
  for (const auto& d : t.comps) e.insert(d.e);
  return e;
}

Status status_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Status::Ok;
}

ReductionTree reduce_text(const std::string& s, ReduceConfig cfg = {}) { return reduce(parse_oneform(s), cfg); }

}  // namespace

TEST_CASE("cusp reduction tree") {
  ReductionTree t = reduce_text("2*y dy - 3*x^2 dx");
  CHECK(t.height == 3);
  REQUIRE(t.comps.size() == 3);
  CHECK(self_intersections(t) == std::multiset<int>{-3, -2, -1});
  std::vector<int> m, mi, nus;
  for (const auto& d : t.comps) m.push_back(d.m_omega), mi.push_back(d.m_ideal);
  CHECK(m == std::vector<int>{1, 2, 5});
  CHECK(mi == std::vector<int>{1, 1, 2});
  for (const auto& p : t.points)
    if (p.blown_up) nus.push_back(p.nu);
  CHECK(nus == std::vector<int>{1, 1, 2});
  CHECK(multiplicity_recurrence_check(t).ok);
  // D2 was created last and carries the only arrow
  DualTree dt = dual_tree(t);
  REQUIRE(dt.vertices.size() == 3);
  CHECK(dt.edges.size() == 2);
  auto adj = dt.adjacency();
  int last = -1;
  for (size_t i = 0; i < dt.vertices.size(); ++i)
    if (dt.vertices[i].comp == 2) last = static_cast<int>(i);
  REQUIRE(last >= 0);
  CHECK(adj[last].size() == 2);
  CHECK(dt.vertices[last].arrows == 1);
  CHECK(dt.vertices[last].e == -1);
  CHECK(dt.arrows.size() == 1);
}

TEST_CASE("pullback oracle confirms the divisor weights") {
  for (const auto& f : testing::hamiltonian_potentials()) {
    CAPTURE(f);
    OneForm w = testing::hamiltonian_form(f);
    ReductionTree t = reduce(w);
    for (const auto& d : t.comps) {
      auto o = testing::pullback_orders(t, d.id, t.input);
      CHECK(o.m_omega == d.m_omega);
      CHECK(o.m_ideal == d.m_ideal);
    }
  }
  for (const auto& e : testing::extra_forms()) {
    CAPTURE(e.name);
    ReductionTree t = reduce_text(e.form);
    for (const auto& d : t.comps) {
      auto o = testing::pullback_orders(t, d.id, t.input);
      CHECK(o.m_omega == d.m_omega);
      CHECK(o.m_ideal == d.m_ideal);
    }
  }
}

TEST_CASE("regular and reduced inputs") {
  CHECK(reduce_text("y dx + x dy").height == 0);
  CHECK(reduce_text("y dx + x dy").comps.empty());
  CHECK(reduce_text("2*x dx - 3*y dy").height == 0);  // pre-reduced, eigenvalues 2 and 3 up to sign
  CHECK(status_of([] { reduce_text("dx"); }) == Status::InvalidArg);
  CHECK(status_of([] { reduce_text("x dx + x dy"); }) == Status::NotIsolated);
}

TEST_CASE("dicritical policy") {
  CHECK(status_of([] { reduce_text("x dy - y dx"); }) == Status::Dicritical);
  ReduceConfig mark;
  mark.dicritical = DicriticalPolicy::Mark;
  ReductionTree t = reduce_text("x dy - y dx", mark);
  CHECK(t.has_dicritical());
  CHECK_FALSE(t.dicritical_log.empty());
  CHECK(tangent_cone(parse_oneform("-y dx + x dy")).is_zero());
}

TEST_CASE("height limit") {
  ReduceConfig cfg;
  cfg.max_height = 2;
  CHECK(status_of([&] { reduce_text("2*y dy - 3*x^2 dx", cfg); }) == Status::HeightLimit);
}

TEST_CASE("blow_up examples") {
  BlowUpResult c = blow_up(parse_oneform("-3*x^2 dx + 2*y dy"), ChartKind::X);
  CHECK(c.k == 1);
  CHECK_FALSE(c.dicritical);
  CHECK(c.strict.a == parse_poly("2*y^2 - 3*x"));
  CHECK(c.strict.b == parse_poly("2*x*y"));
  BlowUpResult s = blow_up(parse_oneform("y dx + x dy"), ChartKind::X);
  CHECK(s.k == 1);
  CHECK(s.strict.a == parse_poly("2*y"));
  CHECK(s.strict.b == parse_poly("x"));
  BlowUpResult r = blow_up(parse_oneform("-y dx + x dy"), ChartKind::X);
  CHECK(r.k == 2);
  CHECK(r.dicritical);
  CHECK(r.strict.a.is_zero());
  CHECK(r.strict.b == parse_poly("1"));
  // d(x^2 - y^2): singular points of the strict form on the divisor are v = 1 and v = -1
  BlowUpResult h = blow_up(parse_oneform("2*x dx - 2*y dy"), ChartKind::X);
  auto fs = factor_univariate(h.strict.a.restrict_x0());
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first.degree() == 1);
  CHECK(fs[1].first.degree() == 1);
}

TEST_CASE("singular points on the divisor and Galois orbits") {
  // d(xy(x + y)): three rational points on one component
  ReductionTree t = reduce(testing::hamiltonian_form("x*y*(x + y)"));
  CHECK(t.height == 1);
  REQUIRE(t.comps.size() == 1);
  CHECK(t.comps[0].e == -1);
  CHECK(dual_tree(t).vertices[0].arrows == 3);
  // d(x^3 - y^3): v = 1 and the conjugate pair v^2 + v + 1
  ReductionTree c = reduce(testing::hamiltonian_form("x^3 - y^3"));
  CHECK(c.height == 1);
  REQUIRE(c.fields.size() == 1);
  CHECK(c.fields[0]->degree == 2);
  int orbit2 = 0;
  for (const auto& p : c.points)
    if (p.height == 1 && p.orbit == 2) orbit2++;
  CHECK(orbit2 == 1);
  CHECK(dual_tree(c).vertices[0].arrows == 3);
  // the square-root-of-two form: one orbit of size 2
  ReductionTree s = reduce_text("(y^2 - 6*x^2) dx + 2*x*y dy");
  bool found = false;
  for (const auto& p : s.points)
    if (p.orbit == 2 && p.factor && p.factor->degree() == 2) found = true;
  CHECK(found);
}

TEST_CASE("self-intersection bookkeeping") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    ReductionTree t = reduce_text(e.form);
    for (const auto& d : t.comps) {
      long later = 0;
      for (const auto& p : t.points) {
        if (!p.blown_up || p.id == d.creator) continue;
        auto cs = p.comps();
        if (std::find(cs.begin(), cs.end(), d.id) != cs.end()) later += p.orbit / d.orbit;
      }
      CHECK(d.e == -1 - later);
    }
  }
}

TEST_CASE("multiplicity recurrence on the corpus and under fault injection") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    CHECK(multiplicity_recurrence_check(reduce_text(e.form)).ok);
  }
  CHECK(multiplicity_recurrence_check(reduce_text("y dx + x dy")).ok);
  ReductionTree t = reduce_text("2*y dy - 3*x^2 dx");
  t.comps[2].m_omega = 4;
  RecurrenceReport r = multiplicity_recurrence_check(t);
  CHECK_FALSE(r.ok);
  CHECK(r.offending == std::vector<int>{2});
  CHECK(r.recomputed.at(2) == 5);
}

TEST_CASE("every cime point is reduced on its own") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    ReductionTree t = reduce_text(e.form);
    for (int id : t.cime()) {
      const InfNearPoint& p = t.point(id);
      if (!p.field->is_rationals()) continue;
      CHECK(reduce(p.form).height == 0);
    }
  }
}

TEST_CASE("pre-reduction is a prefix of the reduction") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    ReductionTree r = reduce_text(e.form);
    ReductionTree p = pre_reduce(parse_oneform(e.form));
    CHECK(p.height <= r.height);
    REQUIRE(p.points.size() <= r.points.size());
    for (size_t i = 0; i < p.points.size(); ++i) {
      const auto &a = p.points[i], &b = r.points[i];
      CHECK(a.path == b.path);
      CHECK(a.coord.str() == b.coord.str());
      CHECK(a.nu == b.nu);
      CHECK(a.form.str() == b.form.str());
    }
  }
  ReductionTree lin = pre_reduce(parse_oneform("2*x dy - y dx"));
  CHECK(lin.height == 0);
}

TEST_CASE("dual tree hash is invariant under swapping the coordinates") {
  for (const auto& f : testing::hamiltonian_potentials()) {
    CAPTURE(f);
    Poly2 p = parse_poly(f);
    Poly2 swapped = p.linear_subs(FieldElem(0), FieldElem(1), FieldElem(1), FieldElem(0));
    DualTree a = dual_tree(reduce(testing::hamiltonian(p)));
    DualTree b = dual_tree(reduce(testing::hamiltonian(swapped)));
    CHECK(a.hash == b.hash);
    CHECK(a.canonical == b.canonical);
  }
  CHECK(dual_tree(reduce_text("2*y dy - 3*x^2 dx")).hash != dual_tree(reduce(testing::hamiltonian_form("y^2 - x^5"))).hash);
}

TEST_CASE("splitting an orbit over its field gives isomorphic trees") {
  ReductionTree base = reduce(testing::hamiltonian_form("x^3 - y^3"));
  REQUIRE(base.fields.size() == 1);
  FieldPtr K = base.fields[0];
  ReductionTree split = reduce(testing::hamiltonian_form("x^3 - y^3").lift(K));
  for (const auto& p : split.points) CHECK(p.orbit == 1);
  CHECK(dual_tree(split).hash == dual_tree(base).hash);
}

TEST_CASE("determinacy recurrence") {
  CHECK(determinacy_bound(2, 1) == 3);
  CHECK(determinacy_bound(2, 2) == 5);
  CHECK(determinacy_bound(2, 3) == 11);
  for (int v = 1; v <= 10; ++v)
    for (int h = 1; h <= 10; ++h)
      CHECK(determinacy_bound(v, h + 2) - determinacy_bound(v, h + 1) - determinacy_bound(v, h) == v + h);
}
