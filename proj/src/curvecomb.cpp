#include "foliage/curvecomb.hpp"

#include <algorithm>

#include "foliage/error.hpp"

namespace foliage {

std::vector<SepBranch> branch_multiplicities(const ReductionTree& tree) {
  if (tree.has_dicritical()) throw Error(Status::Dicritical, "separatrix model needs a non-dicritical tree");
  std::vector<SepBranch> out;
  if (tree.height == 0) {
    // a reduced singularity carries two smooth separatrices
    for (int i = 0; i < 2; ++i) out.push_back({i, 0, 1, {{0, 1}}});
    return out;
  }
  for (int id : tree.cime()) {
    const InfNearPoint& P = tree.point(id);
    if (P.corner()) continue;
    SepBranch B;
    B.id = static_cast<int>(out.size());
    B.cime = id;
    B.orbit = P.orbit;
    std::vector<int> chain{id};
    for (int c = P.parent; c >= 0; c = tree.point(c).parent) chain.push_back(c);
    B.nu[id] = 1;
    for (size_t i = 1; i < chain.size(); ++i) {
      int c = chain[i];
      int v = 0;
      for (size_t j = 0; j < i; ++j) {
        const auto& prox = tree.point(chain[j]).proximate;
        if (std::find(prox.begin(), prox.end(), c) != prox.end()) v += B.nu.at(chain[j]);
      }
      B.nu[c] = v;
    }
    out.push_back(std::move(B));
  }
  return out;
}

SeparatrixModel sep_multiplicities(const ReductionTree& tree) {
  SeparatrixModel s;
  s.branches = branch_multiplicities(tree);
  for (const auto& p : tree.points)
    if (p.blown_up) s.nu_sep[p.id] = 0;
  for (const auto& B : s.branches)
    for (const auto& [c, v] : B.nu)
      if (tree.point(c).blown_up) s.nu_sep[c] += static_cast<long>(B.orbit / tree.point(c).orbit) * v;
  for (const auto& c : tree.comps) {
    const InfNearPoint& p = tree.point(c.creator);
    long m = s.nu_sep.at(p.id);
    for (int d : p.comps()) m += s.m_f.at(d);
    s.m_f[c.id] = m;
  }
  if (tree.height == 0) {
    s.nu0_f = 2;
  } else {
    s.nu0_f = s.nu_sep.at(0);
  }
  for (int id : tree.cime()) {
    const InfNearPoint& p = tree.point(id);
    if (p.corner() || !p.local || !p.local->tangent_saddle_node()) continue;
    s.flagged.push_back(id);
  }
  return s;
}

void attach_separatrix(ReductionTree& tree, const SeparatrixModel& sep) {
  for (auto& c : tree.comps) c.m_f = static_cast<int>(sep.m_f.at(c.id));
}

}  // namespace foliage
