#pragma once

// Assembly of every invariant of one input form.

#include <optional>
#include <string>
#include <vector>

#include "foliage/invariants.hpp"
#include "foliage/nerve.hpp"

namespace foliage {

struct ProvenanceEntry {
  std::string attribute;  // e.g. "D2.color", "p5-D2.arrow", "epsilon"
  std::string value;
  Provenance prov = Provenance::Unknown;
};

struct InvariantReport {
  std::string input;
  int height = 0;
  int nu0 = 0;
  std::optional<long> mu0;  // empty when the Milnor cap is exceeded
  std::map<std::string, int> m_omega, m_ideal;  // keyed by component label
  bool dicritical = false;
  bool second_kind = true;
  std::vector<std::string> second_kind_witnesses;  // point labels
  bool semi_hyperbolic = true;
  long delta_hat = 0;
  NerveMode mode = NerveMode::Certified;
  std::optional<long> sigma_hat, tau_hat;  // finite verdicts only
  std::optional<BetaBounds> beta_hat;
  std::string epsilon_note;
  TffVerdict tff;
  Tri nondegenerate = Tri::Unknown;
  long chains = 0;
  std::vector<ProvenanceEntry> provenance;
};

struct ReportConfig {
  NerveMode mode = NerveMode::Certified;
  const Annotations* annotations = nullptr;
  int milnor_cap = 256;
  int epsilon_degree = 6;
};

// Dicritical trees are accepted: the nerve part is then left empty.
InvariantReport invariant_report(const ReductionTree& tree, const ReportConfig& cfg = {});

}  // namespace foliage
