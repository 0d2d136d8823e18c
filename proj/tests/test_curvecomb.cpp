#include <doctest.h>

#include "foliage/curvecomb.hpp"
#include "foliage/parse.hpp"
#include "foliage/reduction.hpp"
#include "support.hpp"

using namespace foliage;

namespace {

ReductionTree reduce_text(const std::string& s) { return reduce(parse_oneform(s)); }

std::vector<long> m_f_by_comp(const SeparatrixModel& sep, const ReductionTree& t) {
  std::vector<long> out;
  for (const auto& d : t.comps) out.push_back(sep.m_f.at(d.id));
  return out;
}

}  // namespace

TEST_CASE("cusp separatrix") {
  ReductionTree t = reduce_text("2*y dy - 3*x^2 dx");
  SeparatrixModel sep = sep_multiplicities(t);
  REQUIRE(sep.branches.size() == 1);
  CHECK(sep.nu0_f == 2);
  CHECK(sep.nu0_df() == 1);
  CHECK(m_f_by_comp(sep, t) == std::vector<long>{2, 3, 6});
  for (const auto& d : t.comps) CHECK(sep.m_df(d.id) == d.m_omega);

  // multiplicities 2, 1, 1 at the three blown-up points
  std::map<int, int> by_height;
  for (auto [id, nu] : sep.branches[0].nu) by_height[t.point(id).height] = nu;
  CHECK(by_height.at(0) == 2);
  CHECK(by_height.at(1) == 1);
  CHECK(by_height.at(2) == 1);
  CHECK(sep.flagged.empty());
}

TEST_CASE("two smooth transverse branches") {
  ReductionTree node = reduce(testing::hamiltonian_form("x^2 - y^2"));
  SeparatrixModel sep = sep_multiplicities(node);
  CHECK(sep.branches.size() == 2);
  CHECK(sep.nu0_f == 2);

  // height 0: no divisors, the two separatrices of a reduced saddle
  ReductionTree flat = reduce_text("y dx + x dy");
  REQUIRE(flat.height == 0);
  SeparatrixModel s0 = sep_multiplicities(flat);
  CHECK(s0.nu0_f == 2);
  CHECK(s0.m_f.empty());

  // d(x^2 - y^2) is already reduced; after one blow-up f o E = u^2 (1 - v^2)
  CHECK(node.height == 0);
  Poly2 pulled = testing::substitute(parse_poly("x^2 - y^2"), parse_poly("x"), parse_poly("x*y"));
  CHECK(pulled == parse_poly("x^2 - x^2*y^2"));

  // three lines: one component with m(f) = 3 and m(df) = 2 = m(w)
  ReductionTree lines = reduce(testing::hamiltonian_form("x*y*(x + y)"));
  SeparatrixModel s3 = sep_multiplicities(lines);
  REQUIRE(lines.comps.size() == 1);
  CHECK(s3.branches.size() == 3);
  CHECK(s3.m_f.at(lines.comps[0].id) == 3);
  CHECK(lines.comps[0].m_omega == 2);
}

TEST_CASE("pullback oracle for the curve weights") {
  int checked = 0;
  for (const auto& f : testing::hamiltonian_potentials()) {
    CAPTURE(f);
    Poly2 F = parse_poly(f);
    ReductionTree t = reduce(testing::hamiltonian(F));
    SeparatrixModel sep = sep_multiplicities(t);
    for (const auto& d : t.comps) {
      auto o = testing::pullback_orders(t, d.id, t.input, F);
      REQUIRE(o.m_f.has_value());
      CHECK(sep.m_f.at(d.id) == *o.m_f);
      CHECK(sep.m_df(d.id) == d.m_omega);
      ++checked;
    }
    CHECK(sep.nu0_f == *F.order());
    CHECK(sep.nu0_df() == t.points[0].nu);
  }
  CHECK(checked >= 10);
}

TEST_CASE("branch multiplicities add up") {
  for (const auto& e : testing::corpus()) {
    CAPTURE(e.name);
    ReductionTree t = reduce_text(e.form);
    SeparatrixModel sep = sep_multiplicities(t);
    long total = 0;
    for (const auto& b : sep.branches) {
      // every branch is smooth where it ends
      CHECK(b.nu.at(b.cime) == 1);
      total += static_cast<long>(b.orbit) * b.nu.at(0);
    }
    CHECK(total == sep.nu0_f);

    // proximity: the multiplicity at a point is the sum over the following
    // points of the branch that are proximate to it
    for (const auto& b : sep.branches) {
      for (auto [id, nu] : b.nu) {
        if (id == b.cime) continue;
        long sum = 0;
        for (auto [q, nq] : b.nu) {
          const InfNearPoint& pq = t.point(q);
          if (pq.parent < 0) continue;
          for (int c : pq.comps())
            if (t.comp(c).creator == id) sum += nq;
        }
        CHECK(sum == nu);
      }
    }
  }
}

TEST_CASE("attach_separatrix stores the curve weights") {
  ReductionTree t = reduce_text("2*y dy - 3*x^2 dx");
  SeparatrixModel sep = sep_multiplicities(t);
  attach_separatrix(t, sep);
  for (const auto& d : t.comps) {
    CHECK(d.m_f == sep.m_f.at(d.id));
  }
}
