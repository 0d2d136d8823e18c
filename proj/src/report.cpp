#include "foliage/report.hpp"

namespace foliage {

InvariantReport invariant_report(const ReductionTree& tree, const ReportConfig& cfg) {
  InvariantReport r;
  r.input = tree.original.str();
  r.height = tree.height;
  r.nu0 = tree.point(0).nu;
  MilnorResult mu = milnor_number(tree.input.a, tree.input.b, cfg.milnor_cap);
  if (mu.ok()) r.mu0 = mu.value;
  for (const auto& d : tree.comps) {
    std::string l = "D" + std::to_string(d.id);
    r.m_omega[l] = d.m_omega;
    r.m_ideal[l] = d.m_ideal;
  }
  r.dicritical = tree.has_dicritical();
  r.delta_hat = delta_hat(tree);
  r.mode = cfg.mode;
  if (r.dicritical) {
    r.tff.kind = TffKind::NotApplicable;
    r.tff.reason = "dicritical tree";
    return r;
  }
  SecondKindVerdict sk = is_second_kind(tree);
  r.second_kind = sk.value;
  for (int id : sk.witnesses) r.second_kind_witnesses.push_back("p" + std::to_string(id));
  r.semi_hyperbolic = is_semi_hyperbolic(tree);

  Nerve n = build_nerve(tree, cfg.mode, cfg.annotations);
  r.tff = is_tff(n);
  r.chains = chain_count(dual_tree(tree));
  if (!n.trivial()) r.nondegenerate = nondegenerate_check(tree, n).value;

  for (const auto& v : n.vertices) {
    r.provenance.push_back({v.label + ".color", color_name(v.color), v.color_prov});
    if (v.color == Color::Red)
      r.provenance.push_back({v.label + ".weight", v.weight < 0 ? "unknown" : std::to_string(v.weight), v.weight_prov});
  }
  for (const auto& e : n.edges) {
    std::string name = n.vertices[e.v0].label + "-" + n.vertices[e.v1].label;
    r.provenance.push_back({name + ".color", color_name(e.color), e.color_prov});
    r.provenance.push_back({name + ".arrow", arrow_name(e.arrow()), e.bij_prov});
  }

  if (r.tff.kind != TffKind::Finite) return r;
  r.sigma_hat = r.tff.sigma_hat;
  r.tau_hat = r.tff.tau_hat;
  EpsilonStatus eps = EpsilonStatus::Unknown;
  if (cfg.mode == NerveMode::NonDegenerate) {
    eps = EpsilonStatus::Assumed0;
    r.epsilon_note = "non-degenerate mode excludes formal integrating factors";
  } else {
    bool certified_red = false;
    for (const auto& v : n.vertices)
      if (v.color == Color::Red && v.color_prov == Provenance::Certified) certified_red = true;
    EpsilonSearch es = epsilon_search(tree.input, certified_red, cfg.epsilon_degree);
    eps = es.status;
    r.epsilon_note = es.note;
  }
  Provenance ep = eps == EpsilonStatus::Certified0 || eps == EpsilonStatus::Certified1 ? Provenance::Certified
                  : eps == EpsilonStatus::Probed1                                     ? Provenance::Probed
                  : eps == EpsilonStatus::Assumed0                                    ? Provenance::Assumed
                                                                                      : Provenance::Unknown;
  r.provenance.push_back({"epsilon", epsilon_name(eps), ep});
  r.beta_hat = beta_bounds(r.delta_hat, *r.tau_hat, eps, r.second_kind);
  return r;
}

}  // namespace foliage
