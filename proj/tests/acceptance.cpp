// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "foliage/curvecomb.hpp"
#include "foliage/error.hpp"
#include "foliage/family.hpp"
#include "foliage/invariants.hpp"
#include "foliage/parse.hpp"
#include "foliage/report.hpp"
#include "foliage/serialize.hpp"
#include "support.hpp"

using namespace foliage;
using namespace testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    std::ostringstream m;
    m << "took " << secs << " s, limit " << limit_s << " s";
    o.fail(m.str());
  }
  std::printf("%-4s %2d  %-34s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  return o.ok;
}

ReductionTree reduce_text(const std::string& s) { return reduce(parse_oneform(s)); }

Outcome milnor_oracle() {
  Outcome o;
  for (int p = 1; p <= 7; ++p)
    for (int q = 1; q <= 7; ++q) {
      Poly2 a = parse_poly(std::to_string(p) + "*x^" + std::to_string(p - 1));
      Poly2 b = parse_poly(std::to_string(q) + "*y^" + std::to_string(q - 1));
      MilnorResult r = milnor_number(a, b);
      if (!r.ok() || r.value != (p - 1) * (q - 1))
        o.fail("p=" + std::to_string(p) + " q=" + std::to_string(q));
    }
  return o;
}

Outcome cusp_golden() {
  Outcome o;
  ReductionTree t = reduce_text("2*y dy - 3*x^2 dx");
  if (t.height != 3) o.fail("height " + std::to_string(t.height));
  std::multiset<int> e;
  for (const auto& d : t.comps) e.insert(d.e);
  if (e != std::multiset<int>{-3, -2, -1}) o.fail("self-intersections");
  if (!multiplicity_recurrence_check(t).ok) o.fail("recurrence");
  Poly2 f = parse_poly("y^2 - x^3");
  SeparatrixModel sep = sep_multiplicities(t);
  for (const auto& d : t.comps) {
    PullbackOrders pb = pullback_orders(t, d.id, t.input, f);
    if (pb.m_omega != d.m_omega) o.fail("m_omega differs from the pullback on D" + std::to_string(d.id));
    if (!pb.m_f || *pb.m_f - 1 != sep.m_df(d.id)) o.fail("m_df differs from the pullback on D" + std::to_string(d.id));
    if (d.m_omega != sep.m_df(d.id)) o.fail("m_omega != m_df on D" + std::to_string(d.id));
    // the recurrence step is the exponent divided out when blowing up the creator
    const InfNearPoint& c = t.point(d.creator);
    int through = 0;
    for (int k : c.comps()) through += t.comp(k).m_omega;
    if (d.m_omega - through != c.division_exponent) o.fail("division exponent at the creator of D" + std::to_string(d.id));
  }
  if (delta_hat(t) != 0) o.fail("delta_hat");
  if (!is_second_kind(t).value) o.fail("second kind");
  CrossCheck cc = second_kind_crosscheck(t, sep);
  if (!cc.consistent || !cc.nu_equal || !cc.all_m_equal) o.fail("cross-check");
  if (cc.nu0_omega != cc.nu0_df || cc.nu0_df != 1) o.fail("nu0");
  return o;
}

Outcome camacho_sad() {
  Outcome o;
  int trees = 0;
  for (const auto& f : hamiltonian_potentials()) {
    ReductionTree t = reduce(hamiltonian_form(f));
    bool rational = true;
    for (int id : t.cime())
      for (const auto& br : t.point(id).local->branches)
        if (!br.cs_index || !br.cs_index->is_rational()) rational = false;
    if (!rational || t.comps.empty()) continue;
    ++trees;
    for (const auto& d : t.comps) {
      Rational sum = 0;
      for (int id : t.cime()) {
        const InfNearPoint& p = t.point(id);
        for (const auto& br : p.local->branches)
          if (br.comp == d.id) sum += br.cs_index->to_rational() * Rational(p.orbit / d.orbit);
      }
      if (sum != Rational(d.e)) o.fail(f + ": D" + std::to_string(d.id));
    }
  }
  if (trees < 10) o.fail("only " + std::to_string(trees) + " trees");
  return o;
}

Outcome multiplicity_formula() {
  Outcome o;
  for (const auto& e : corpus()) {
    ReductionTree t = reduce_text(e.form);
    if (t.has_dicritical()) continue;
    MultiplicityFormula r = multiplicity_formula_check(t);
    if (!r.ok()) o.fail(e.name);
  }
  return o;
}

Outcome pre_reduction() {
  Outcome o;
  int n = 0;
  for (const auto& e : corpus()) {
    ReductionTree r = reduce_text(e.form);
    if (!is_second_kind(r).value) continue;
    Json a = tree_to_json(r), b = tree_to_json(pre_reduce(parse_oneform(e.form)));
    a.erase("pre_reduction");
    b.erase("pre_reduction");
    if (a != b) o.fail(e.name);
    ++n;
  }
  if (n == 0) o.fail("no second-kind members");
  return o;
}

Outcome nerve_oracle() {
  Outcome o;
  std::mt19937 rng(20240601);
  for (int it = 0; it < 1000; ++it) {
    Nerve n = random_red_nerve(rng, 12);
    std::vector<int> all(n.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    long census = active_part_census(n, prune(n).kept);
    long brute = oracle_coker(n, all);
    if (census != brute || cohomology_bruteforce_red(n, all) != brute) o.fail("mismatch at case " + std::to_string(it));
    int at = std::uniform_int_distribution<int>(0, static_cast<int>(n.vertices.size()) - 1)(rng);
    Nerve g = attach_green_branch(n, at, 1 + static_cast<int>(rng() % 4), rng);
    TffVerdict v = is_tff(g);
    if (v.kind != TffKind::Finite || v.sigma_hat != brute) o.fail("green branch changed case " + std::to_string(it));
  }
  return o;
}

Outcome criterion_soundness() {
  Outcome o;
  std::mt19937 rng(77);
  int cases = 0;
  while (cases < 1000) {
    double p = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
    Nerve n = random_mixed_nerve(rng, p, 12);
    auto comps = oracle_red_components(n);
    if (comps.empty()) continue;
    ++cases;
    TffVerdict v = is_tff(n);
    bool expected = comps.size() == 1 && oracle_repulsive(n, comps[0]);
    if ((v.kind == TffKind::Finite) != expected) o.fail("verdict at case " + std::to_string(cases));
    if (v.kind == TffKind::Infinite && (!v.witness || !witness_ok(n, *v.witness)))
      o.fail("witness at case " + std::to_string(cases));
  }
  return o;
}

Outcome nondegenerate_fast_path() {
  Outcome o;
  std::mt19937 rng(5150);
  int compared = 0;
  for (int it = 0; it < 5000 && compared < 100; ++it) {
    RandomSkeleton r = random_skeleton(rng);
    Nerve n = build_nerve(r.sk, NerveMode::NonDegenerate);
    if (nondegenerate_check(r.sk, n, true).value != Tri::Yes) continue;
    TffVerdict v = is_tff(n);
    if (v.kind != TffKind::Finite) continue;
    ++compared;
    long chains = chain_count_oracle(r.dt);
    if (chain_count(r.sk) != chains || v.tau_hat != chains) o.fail("case " + std::to_string(it));
  }
  if (compared < 100) o.fail("only " + std::to_string(compared) + " comparable trees");
  return o;
}

Outcome family_check() {
  Outcome o;
  OneFormFamily eta = parse_family("x dy + y*(y - t) dx");
  std::vector<Rational> samples = {make_rational(1, 1), make_rational(1, 2), make_rational(-1, 3),
                                   make_rational(1, 8), make_rational(1, 16), make_rational(1, 32)};
  EquisingReport r = equising_sample_check(eta, samples, ReduceConfig{});
  if (r.equisingular_at_samples) o.fail("eta1 passed");
  for (const auto& s : r.samples)
    if (s.ok || s.reason != "μ drop 2 → 1") o.fail("eta1 at t = " + s.t.get_str() + ": " + s.reason);
  EquisingReport c = equising_sample_check(constant_family(parse_oneform("2*y dy - 3*x^2 dx")),
                                           {make_rational(1, 1), make_rational(2, 1), make_rational(3, 1)},
                                           ReduceConfig{});
  if (!c.equisingular_at_samples) o.fail("constant cusp family failed");
  return o;
}

Outcome determinacy() {
  Outcome o;
  if (determinacy_bound(2, 1) != 3 || determinacy_bound(2, 2) != 5 || determinacy_bound(2, 3) != 11)
    o.fail("initial values");
  for (int v = 1; v <= 10; ++v)
    for (int h = 1; h <= 10; ++h)
      if (determinacy_bound(v, h + 2) - determinacy_bound(v, h + 1) - determinacy_bound(v, h) != v + h)
        o.fail("v=" + std::to_string(v) + " h=" + std::to_string(h));
  return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(FOLIAGE_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Outcome determinism() {
  Outcome o;
  std::vector<std::string> forms;
  for (const auto& e : corpus()) forms.push_back(e.form);
  forms.push_back("x dy - y dx");
  for (const auto& f : forms) {
    // JSON round trips
    ReduceConfig mark;
    mark.dicritical = DicriticalPolicy::Mark;
    ReductionTree t = reduce(parse_oneform(f), mark);
    Json tj = tree_to_json(t);
    if (tree_to_json(tree_from_json(tj)) != tj) o.fail("tree round trip: " + f);
    InvariantReport rep = invariant_report(t);
    Json rj = report_to_json(rep);
    if (report_to_json(report_from_json(rj)) != rj) o.fail("report round trip: " + f);
    if (!t.has_dicritical()) {
      Nerve n = build_nerve(t, NerveMode::NonDegenerate);
      Json nj = nerve_to_json(n);
      if (nerve_to_json(nerve_from_json(nj)) != nj) o.fail("nerve round trip: " + f);
    }
    // byte-identical command line runs
    std::string q = "'" + f + "'";
    for (const std::string& cmd : {"reduce --dicritical mark --out json -- " + q,
                                   "invariants --dicritical mark --out json -- " + q,
                                   "tff --mode nondegenerate -- " + q}) {
      auto a = run_cli(cmd), b = run_cli(cmd);
      if (a != b || a.second.empty()) o.fail("not reproducible: " + cmd);
    }
  }
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "Milnor oracle", 1.0, milnor_oracle);
  ok &= run_criterion(2, "cusp golden run", 1.0, cusp_golden);
  ok &= run_criterion(3, "Camacho-Sad sums", 0, camacho_sad);
  ok &= run_criterion(4, "multiplicity sum formula", 0, multiplicity_formula);
  ok &= run_criterion(5, "pre-reduction in the second kind", 0, pre_reduction);
  ok &= run_criterion(6, "nerve oracle equivalence", 30.0, nerve_oracle);
  ok &= run_criterion(7, "criterion soundness", 0, criterion_soundness);
  ok &= run_criterion(8, "non-degenerate fast path", 0, nondegenerate_fast_path);
  ok &= run_criterion(9, "family check", 2.0, family_check);
  ok &= run_criterion(10, "determinacy recurrence", 0, determinacy);
  ok &= run_criterion(11, "determinism and round trips", 0, determinism);
  return ok ? 0 : 1;
}
