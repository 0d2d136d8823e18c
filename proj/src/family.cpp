#include "foliage/family.hpp"

#include <algorithm>

#include "foliage/error.hpp"
#include "foliage/invariants.hpp"
#include "foliage/reduction.hpp"

namespace foliage {

namespace {

Poly2 specialize_poly(const Poly3& p, const Rational& t0) {
  FieldPtr q = Field::rationals();
  Poly2 out(q);
  for (const auto& [e, c] : p) {
    Rational v = c;
    for (int k = 0; k < e[2]; ++k) v *= t0;
    if (v != 0) out.add_term(e[0], e[1], FieldElem(q, v));
  }
  return out;
}

std::string poly3_str(const Poly3& p) {
  if (p.empty()) return "0";
  std::string s;
  // highest total degree first, matching Poly2::str
  std::vector<std::pair<std::array<int, 3>, Rational>> terms(p.begin(), p.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
    return l.first[0] + l.first[1] + l.first[2] > r.first[0] + r.first[1] + r.first[2];
  });
  for (const auto& [e, c] : terms) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    std::string mono;
    const char* names[3] = {"x", "y", "t"};
    for (int k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) s += rational_str(a);
    else if (a == 1) s += mono;
    else s += rational_str(a) + "*" + mono;
  }
  return s;
}

}  // namespace

bool OneFormFamily::depends_on_t() const {
  for (const auto* p : {&a, &b})
    for (const auto& [e, c] : *p)
      if (e[2] > 0 && c != 0) return true;
  return false;
}

std::string OneFormFamily::str() const { return "(" + poly3_str(a) + ") dx + (" + poly3_str(b) + ") dy"; }

OneForm specialize(const OneFormFamily& fam, const Rational& t0) {
  return {specialize_poly(fam.a, t0), specialize_poly(fam.b, t0)};
}

OneFormFamily constant_family(const OneForm& w) {
  if (!w.field()->is_rationals()) throw Error(Status::InvalidArg, "families have rational coefficients");
  OneFormFamily f;
  for (const auto& [e, c] : w.a.terms()) f.a[{e.first, e.second, 0}] = c.to_rational();
  for (const auto& [e, c] : w.b.terms()) f.b[{e.first, e.second, 0}] = c.to_rational();
  return f;
}

std::vector<Rational> default_samples() {
  return {make_rational(1, 8), make_rational(1, 16), make_rational(1, 32)};
}

EquisingReport equising_sample_check(const OneFormFamily& fam, const std::vector<Rational>& samples,
                                     const ReduceConfig& cfg, long milnor_cap) {
  EquisingReport rep;
  OneForm base = specialize(fam, 0);
  ReductionTree bt = reduce(base, cfg);
  MilnorResult bm = milnor_number(base.a, base.b, static_cast<int>(milnor_cap));
  if (!bm.ok()) throw Error(Status::NotIsolated, "Milnor number of the base form is not available");
  rep.base_mu = bm.value;
  rep.base_hash = dual_tree(bt).hash;

  std::vector<Rational> ts = samples;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  rep.equisingular_at_samples = true;
  for (const Rational& t : ts) {
    if (t == 0) throw Error(Status::InvalidArg, "samples must be nonzero");
    SampleVerdict v;
    v.t = t;
    OneForm w = specialize(fam, t);
    auto ord = w.order();
    if (w.is_zero() || !ord || *ord == 0) {
      v.reason = "regular at the origin";
    } else {
      MilnorResult m = milnor_number(w.a, w.b, static_cast<int>(milnor_cap));
      if (m.code == MilnorResult::Code::NotIsolated) {
        v.reason = "singularity not isolated";
      } else if (m.code == MilnorResult::Code::CapExceeded) {
        v.reason = "Milnor cap exceeded";
      } else {
        v.mu = m.value;
        if (m.value < rep.base_mu)
          v.reason = "μ drop " + std::to_string(rep.base_mu) + " → " + std::to_string(m.value);
        else if (m.value > rep.base_mu)
          v.reason = "μ jump " + std::to_string(rep.base_mu) + " → " + std::to_string(m.value);
        try {
          v.hash = dual_tree(reduce(w, cfg)).hash;
          if (v.reason.empty() && v.hash != rep.base_hash) v.reason = "dual trees differ";
        } catch (const Error& e) {
          if (v.reason.empty()) v.reason = std::string(status_name(e.code())) + ": " + e.what();
        }
      }
    }
    v.ok = v.reason.empty();
    if (!v.ok) rep.equisingular_at_samples = false;
    rep.samples.push_back(v);
  }
  return rep;
}

}  // namespace foliage
