#include <doctest.h>

#include <random>
#include <set>

#include "foliage/error.hpp"
#include "foliage/localclass.hpp"
#include "foliage/parse.hpp"
#include "foliage/reduction.hpp"
#include "support.hpp"

using namespace foliage;

namespace {

OneForm w(const std::string& s) { return parse_oneform(s); }

Rational rat(long n, long d = 1) { return make_rational(n, d); }

// Pullback of a form under the linear change (x, y) -> (m00 x + m01 y, m10 x + m11 y).
OneForm linear_change(const OneForm& f, long m00, long m01, long m10, long m11) {
  FieldElem a(m00), b(m01), c(m10), d(m11);
  Poly2 A = f.a.linear_subs(a, b, c, d), B = f.b.linear_subs(a, b, c, d);
  return {A.scale(a) + B.scale(c), A.scale(b) + B.scale(d)};
}

}  // namespace

TEST_CASE("d(xy) is a linearizable saddle with a certified first integral") {
  ReducedSingularity r = classify_reduced(w("y dx + x dy"), {{Axis::T, 0}});
  CHECK(r.kind == SingKind::ResonantProbed);
  CHECK(r.p == 1);
  CHECK(r.q == 1);
  CHECK(r.first_integral == Tri::Yes);
  CHECK(r.fi_prov == Provenance::Certified);
  REQUIRE(r.fi_certificate.has_value());
  // the certificate is a first integral: df ^ w = 0
  Poly2 f = *r.fi_certificate;
  CHECK((f.dx() * parse_poly("x") - f.dy() * parse_poly("y")).is_zero());
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].cs_index == FieldElem(-1));
}

TEST_CASE("saddle-node -x dy + y^2 dx") {
  OneForm sn = w("-x dy + y^2 dx");
  ReducedSingularity r = classify_reduced(sn, {});
  CHECK(r.kind == SingKind::SaddleNode);
  CHECK(r.mu == 2);
  // strong variety {y = 0}, weak variety {x = 0}
  CHECK(saddle_node_tangency(sn, Axis::T, false) == Alignment::Transverse);
  CHECK(saddle_node_tangency(sn, Axis::S, false) == Alignment::Tangent);
  CHECK(saddle_node_tangency(sn, Axis::T, true) == Alignment::Tangent);
  CHECK(milnor_along_branch(sn, Axis::S) == 2);
  CHECK(milnor_along_branch(sn, Axis::T) == 1);
  CHECK(camacho_sad_index(sn, Axis::T) == FieldElem(0));
  ReducedSingularity on_weak = classify_reduced(sn, {{Axis::S, 0}});
  CHECK(on_weak.tangent_saddle_node());
  ReducedSingularity on_strong = classify_reduced(sn, {{Axis::T, 0}});
  CHECK_FALSE(on_strong.tangent_saddle_node());
}

TEST_CASE("Camacho-Sad index of a resonant saddle is -p/q along the q-eigenvalue branch") {
  for (long p = 1; p <= 4; ++p)
    for (long q = 1; q <= 4; ++q) {
      // q x dy + p y dx: dual field q x d/dx - p y d/dy
      OneForm s{parse_poly(std::to_string(p) + "*y"), parse_poly(std::to_string(q) + "*x")};
      CHECK(camacho_sad_index(s, Axis::T) == FieldElem(Field::rationals(), rat(-p, q)));
      CHECK(camacho_sad_index(s, Axis::S) == FieldElem(Field::rationals(), rat(-q, p)));
      CHECK(milnor_along_branch(s, Axis::T) == 1);
    }
  CHECK_THROWS_AS(camacho_sad_index(w("y dx + (x + y) dy"), Axis::S), Error);
}

TEST_CASE("reducedness is enforced") {
  auto code = [](const OneForm& f) {
    try {
      classify_reduced(f, {});
    } catch (const Error& e) {
      return e.code();
    }
    return Status::Ok;
  };
  CHECK(code(w("x dy - 2*y dx")) == Status::NotReduced);   // ratio 2 > 0
  CHECK(code(w("y dy + x^2 dx")) == Status::NotReduced);   // nilpotent linear part
  CHECK(code(w("x dy + 2*y dx")) == Status::Ok);
}

TEST_CASE("kinds fix the first-integral status") {
  ReducedSingularity nr = classify_reduced(w("(x + y) dy + (x - 2*y) dx"), {});
  CHECK(nr.kind == SingKind::NonResonant);
  CHECK(nr.first_integral == Tri::No);
  CHECK(nr.fi_prov == Provenance::Certified);
  ReducedSingularity ob = classify_reduced(w("y dx + x dy + x^3*y^2 dy"), {});
  CHECK(ob.kind == SingKind::ResonantObstructed);
  CHECK(ob.first_integral == Tri::No);
  CHECK(ob.fi_prov == Provenance::Certified);
}

TEST_CASE("linearizability probe against the resonant normal form") {
  // q x (1 + zeta u^k) dy + p y (1 + (zeta - 1) u^k) dx with u = x^p y^q
  ProbeResult lin = linearizability_probe(w("y dx + x dy"), 1, 1, 6);
  CHECK_FALSE(lin.obstructed);
  CHECK(lin.depth == 6);
  ProbeResult z1 = linearizability_probe(w("y dx + x dy + x^3*y^2 dy"), 1, 1, 6);
  REQUIRE(z1.obstructed);
  CHECK(z1.k == 2);
  REQUIRE(z1.zeta.has_value());
  CHECK(*z1.zeta == FieldElem(1));
  ProbeResult z0 = linearizability_probe(w("(y - x^2*y^3) dx + x dy"), 1, 1, 6);
  REQUIRE(z0.obstructed);
  CHECK(z0.k == 2);
  // zeta = 0 here, but for p = q exchanging the separatrices sends zeta to 1 - zeta
  // and the reported representative is the larger one
  CHECK(*z0.zeta == FieldElem(1));
  ProbeResult h = linearizability_probe(w("y dx + x*(1 + x^2*y^2)^2 dy"), 1, 1, 6);
  REQUIRE(h.obstructed);
  CHECK(*h.zeta == FieldElem(Field::rationals(), rat(3, 4)));
  // p = 1, q = 2, k = 1, zeta = 1: 2 x (1 + x y^2) dy + y dx
  ProbeResult pq = linearizability_probe(w("y dx + (2*x + 2*x^2*y^2) dy"), 1, 2, 6);
  REQUIRE(pq.obstructed);
  CHECK(pq.k == 1);
  CHECK(*pq.zeta == FieldElem(1));
  ProbeResult vac = linearizability_probe(w("y dx + x dy + x^3*y^2 dy"), 1, 1, 0);
  CHECK_FALSE(vac.obstructed);
  CHECK(vac.depth == 0);
}

TEST_CASE("probe results are monotone in the depth and agree with full normalization") {
  const std::vector<std::string> forms = {
      "y dx + x dy + x^3*y^2 dy",
      "(y - x^2*y^3) dx + x dy",
      "y dx + x dy + x^2*y^3 dx + x^5*y^4 dy",
      "y dx + x dy + x*y^2 dx + x^2*y dy",
      "y dx + x dy + (x*y)^3 dx",
  };
  for (const auto& s : forms) {
    CAPTURE(s);
    OneForm f = w(s);
    std::optional<ProbeResult> first;
    for (int K = 1; K <= 8; ++K) {
      ProbeResult r = linearizability_probe(f, 1, 1, K);
      if (first) {
        REQUIRE(r.obstructed);
        CHECK(r.k == first->k);
        CHECK(r.zeta->str() == first->zeta->str());
      } else if (r.obstructed) {
        first = r;
      }
    }
    ProbeResult fast = linearizability_probe(f, 1, 1, 6);
    ProbeResult slow = linearizability_probe(f, 1, 1, 6, true);
    CHECK(fast.obstructed == slow.obstructed);
    if (fast.obstructed && slow.obstructed) {
      CHECK(fast.k == slow.k);
      CHECK(fast.zeta->str() == slow.zeta->str());
    }
  }
}

TEST_CASE("classification is invariant under rational linear changes of coordinates") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> coef(-3, 3);
  const std::vector<std::string> forms = {
      "y dx + x dy", "(x + y) dy + (x - 2*y) dx", "y dx + x dy + x^3*y^2 dy", "x dy + y^2 dx",
      "y dx + 2*x dy", "2*y dy - 3*x^2 dx", "(x + y) dy - y dx",
  };
  for (const auto& s : forms) {
    CAPTURE(s);
    ReductionTree t = reduce(w(s));
    std::multiset<std::string> kinds;
    for (int id : t.cime()) kinds.insert(kind_name(t.point(id).local->kind));
    for (int trial = 0; trial < 6; ++trial) {
      long a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
      if (a * d - b * c == 0) continue;
      ReductionTree u = reduce(linear_change(w(s), a, b, c, d));
      std::multiset<std::string> k2;
      for (int id : u.cime()) k2.insert(kind_name(u.point(id).local->kind));
      CHECK(kinds == k2);
      CHECK(dual_tree(u).hash == dual_tree(t).hash);
    }
  }
}

TEST_CASE("Camacho-Sad sums equal self-intersections on the hamiltonian corpus") {
  int components = 0;
  for (const auto& f : testing::hamiltonian_potentials()) {
    CAPTURE(f);
    ReductionTree t = reduce(testing::hamiltonian_form(f));
    for (const auto& d : t.comps) {
      Rational sum = 0;
      for (int id : t.cime()) {
        const InfNearPoint& p = t.point(id);
        for (const auto& br : p.local->branches) {
          if (br.comp != d.id) continue;
          REQUIRE(br.cs_index.has_value());
          REQUIRE(br.cs_index->is_rational());
          sum += br.cs_index->to_rational() * Rational(p.orbit / d.orbit);
        }
      }
      CHECK(sum == Rational(d.e));
      ++components;
    }
  }
  CHECK(components >= 10);
}

TEST_CASE("three lines: each point on the divisor has index -1/3") {
  ReductionTree t = reduce(testing::hamiltonian_form("x*y*(x + y)"));
  int n = 0;
  for (int id : t.cime()) {
    const auto& br = t.point(id).local->branches;
    REQUIRE(br.size() == 1);
    CHECK(*br[0].cs_index == FieldElem(Field::rationals(), rat(-1, 3)));
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("first integral search") {
  auto f = find_first_integral(w("2*y dy - 3*x^2 dx"), 6);
  REQUIRE(f.has_value());
  CHECK((f->dx() * parse_poly("2*y") - f->dy() * parse_poly("-3*x^2")).is_zero());
  CHECK_FALSE(find_first_integral(w("y dx + x dy + x^3*y^2 dy"), 8).has_value());
}
