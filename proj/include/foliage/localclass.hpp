#pragma once

// Classification of reduced singular points against the resonant-saddle,
// non-resonant and saddle-node normal forms.

#include <optional>
#include <string>
#include <vector>

#include "foliage/poly2.hpp"

namespace foliage {

enum class SingKind { NonResonant, ResonantProbed, ResonantObstructed, SaddleNode };
enum class Provenance { Certified, Probed, Annotated, Assumed, Unknown };
enum class Tri { Yes, No, Unknown };
enum class Alignment { Transverse, Tangent, NotApplicable };
enum class Axis { S, T };  // branch {s = 0} or {t = 0} in local coordinates

const char* kind_name(SingKind k);
const char* provenance_name(Provenance p);
const char* tri_name(Tri t);
const char* alignment_name(Alignment a);

struct Branch {
  Axis axis = Axis::S;
  int comp = -1;  // divisor component id
};

struct BranchData {
  Axis axis = Axis::S;
  int comp = -1;
  std::optional<FieldElem> cs_index;  // always set for invariant branches
  bool weak = false;                  // weak variety of a saddle-node
  Alignment alignment = Alignment::NotApplicable;
  int mu_along = 0;
};

struct ProbeResult {
  bool obstructed = false;
  int depth = 0;  // probe depth K
  int k = 0;      // first obstruction order
  std::optional<FieldElem> zeta;
  std::string str() const;
};

struct ReducedSingularity {
  SingKind kind = SingKind::NonResonant;
  RatioClass ratio;
  Integer p = 0, q = 0;  // resonance: eigenvalues proportional to (q, -p)
  ProbeResult probe;
  bool probe_implied = false;  // no probe run: a polynomial first integral certifies linearizability
  int sn_p = 0;                // saddle-node: Milnor number minus one
  long mu = 0;                 // local Milnor number
  bool corner = false;
  std::vector<BranchData> branches;
  Tri first_integral = Tri::Unknown;
  Provenance fi_prov = Provenance::Unknown;
  std::optional<Poly2> fi_certificate;
  Tri weak_periodic = Tri::Unknown;  // tangent saddle-nodes only
  Provenance weak_prov = Provenance::Unknown;

  bool tangent_saddle_node() const;
};

struct ClassifyConfig {
  int probe_depth = 10;
  int first_integral_degree = 12;
};

// Throws Status::NotReduced when the linear part is not of reduced type or a
// branch is not invariant.
ReducedSingularity classify_reduced(const OneForm& w, const std::vector<Branch>& branches,
                                    const ClassifyConfig& cfg = {});

// The obstruction order is located by a formal first-integral construction and
// zeta read off the Poincare-Dulac normal form; full_normalization uses the
// normal form alone, at a much higher cost.
ProbeResult linearizability_probe(const OneForm& w, const Integer& p, const Integer& q, int K,
                                  bool full_normalization = false);

// Index of the invariant branch; throws Status::BranchNotInvariant.
FieldElem camacho_sad_index(const OneForm& w, Axis axis);
// Vanishing order of the dual field restricted to the branch.
int milnor_along_branch(const OneForm& w, Axis axis);
Alignment saddle_node_tangency(const OneForm& w, Axis axis, bool divisor_singular);
bool branch_invariant(const OneForm& w, Axis axis);

// Nonconstant polynomial f with f(0) = 0 and df ^ w = 0, degree <= max_deg.
std::optional<Poly2> find_first_integral(const OneForm& w, int max_deg);

}  // namespace foliage
