#pragma once

// Multiplicities of the separatrix curve read off the reduction tree through
// proximity relations.

#include <map>
#include <vector>

#include "foliage/reduction.hpp"

namespace foliage {

struct SepBranch {
  int id = 0;
  int cime = 0;   // cime point (orbit representative) the branch ends at
  int orbit = 1;  // number of conjugate branches
  std::map<int, int> nu;  // point id -> multiplicity of the branch at that point
};

struct SeparatrixModel {
  std::vector<SepBranch> branches;
  std::map<int, long> nu_sep;  // blown-up point id -> multiplicity of Sep at each copy
  std::map<int, long> m_f;     // component id -> m_D(f)
  long nu0_f = 0;
  std::vector<int> flagged;    // tangent saddle-node points whose weak curve is the divisor
  long m_df(int comp) const { return m_f.at(comp) - 1; }
  long nu0_df() const { return nu0_f - 1; }
};

std::vector<SepBranch> branch_multiplicities(const ReductionTree& tree);
SeparatrixModel sep_multiplicities(const ReductionTree& tree);
// Stores m_f on the tree components.
void attach_separatrix(ReductionTree& tree, const SeparatrixModel& sep);

}  // namespace foliage
