#pragma once

// The complete nerve: a bicolored, weighted, arrowed tree on singular points
// (type 0) and punctured divisor components (type 1), the pruning calculus,
// and the finite formal type criterion.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foliage/localclass.hpp"
#include "foliage/reduction.hpp"

namespace foliage {

enum class Color { Red, Green, Unknown };
// Forward: the first endpoint side is not bijective, the second one is,
// drawn as an arrow pointing at the second endpoint.
enum class Arrow { Forward, Backward, Both, Neither, Unknown };
enum class NerveMode { Certified, Annotated, NonDegenerate };
enum class Holonomy { Finite, CommutativeInfinite, NonCommutative };

const char* color_name(Color c);
const char* arrow_name(Arrow a);
const char* mode_name(NerveMode m);
NerveMode parse_mode(const std::string& s);

// Local data of the nerve, independent of how it was obtained.
struct SkeletonComp {
  std::string label;
  int comp = -1, copy = 0;  // tree reference, -1 for synthetic skeletons
};
struct SkeletonSite {
  std::string label;
  int point = -1, copy = 0;
  std::vector<int> comps;  // skeleton component indices, one or two
  SingKind kind = SingKind::NonResonant;
  Tri first_integral = Tri::Unknown;
  Provenance fi_prov = Provenance::Unknown;
  bool tangent_sn = false;
  int weak_comp = -1;  // component carrying the weak variety of a saddle-node
  Tri weak_periodic = Tri::Unknown;
  Provenance weak_prov = Provenance::Unknown;
};
struct NerveSkeleton {
  std::vector<SkeletonComp> comps;
  std::vector<SkeletonSite> sites;
  std::vector<int> valence() const;  // sites per component
};

// Throws Status::Dicritical on trees with a dicritical component.
NerveSkeleton nerve_skeleton(const ReductionTree& tree);

struct CompAnnotation {
  std::optional<Holonomy> holonomy;
  int finite_order = 0;
};
struct SiteAnnotation {
  std::optional<Tri> first_integral;
  std::optional<Tri> weak_periodic;
  std::optional<int> weight;       // transverse symmetry dimension d_s
  std::optional<int> edge_index;   // index d of the extension formula
  std::optional<bool> edge_correction;
};
// Keys are labels such as "D3", "p7", or "D3#1" for one conjugate copy; a
// bare label applies to every copy of the orbit.
struct Annotations {
  std::map<std::string, CompAnnotation> comps;
  std::map<std::string, SiteAnnotation> sites;
  bool empty() const { return comps.empty() && sites.empty(); }
};
// Throws Status::Annotation on malformed documents.
Annotations parse_annotations(const std::string& json_text);

struct NerveVertex {
  int id = 0;
  int type = 0;
  Color color = Color::Unknown;
  Provenance color_prov = Provenance::Unknown;
  int weight = -1;  // red vertices: 0 or 1, -1 when unknown or green
  Provenance weight_prov = Provenance::Unknown;
  int ref = -1;     // skeleton site (type 0) or component (type 1) index
  std::string label;
  bool saddle_node = false;
  bool tangent_sn = false;
  int valence = 0;  // type 1: number of singular points on the component
};

struct NerveEdge {
  int v0 = 0;  // type-0 endpoint
  int v1 = 0;  // type-1 endpoint
  Color color = Color::Unknown;
  Provenance color_prov = Provenance::Unknown;
  Tri bij0 = Tri::Unknown, bij1 = Tri::Unknown;
  Provenance bij_prov = Provenance::Unknown;
  Arrow arrow() const;
  Tri bijective_at(int v) const { return v == v0 ? bij0 : bij1; }
  int other(int v) const { return v == v0 ? v1 : v0; }
};

struct Nerve {
  NerveMode mode = NerveMode::Certified;
  std::vector<NerveVertex> vertices;
  std::vector<NerveEdge> edges;
  std::vector<std::string> notes;
  bool trivial() const { return vertices.empty(); }
  std::vector<std::vector<int>> incidence() const;  // vertex -> edge indices
  std::vector<int> red_vertices() const;
};

// Throws Status::Annotation when an annotation contradicts a certified value.
Nerve build_nerve(const NerveSkeleton& sk, NerveMode mode, const Annotations* ann = nullptr);
Nerve build_nerve(const ReductionTree& tree, NerveMode mode, const Annotations* ann = nullptr);

// Connected components of the red part, each a sorted list of vertex ids.
// Only red edges join vertices of the red part.
std::vector<std::vector<int>> red_components(const Nerve& n);
bool red_connected(const Nerve& n);
// Unknown when an arrow needed by the test is unknown.
Tri is_repulsive(const Nerve& n, const std::vector<int>& part);

struct PruneStep {
  bool green = true;
  std::vector<int> removed;  // vertex ids, free end first
  int attach = -1;
};
struct PruneResult {
  std::vector<int> kept;  // vertex ids of the pruned graph
  std::vector<PruneStep> log;
};
// Green sécable branches of the whole nerve first, then red sécable branches
// of each red component. `shuffle_seed` permutes the elision order.
PruneResult prune(const Nerve& n, unsigned shuffle_seed = 0);

// Active parts of a red vertex set: the sum over parts of (valence - 1).
long active_part_census(const Nerve& n, const std::vector<int>& vertices);
// Rank computation of the cohomology map of the red subgraph on `vertices`.
long cohomology_bruteforce_red(const Nerve& n, const std::vector<int>& vertices);
// First Betti number of the red part with all weight-0 vertices identified.
long bouquet_rank(const Nerve& n, const std::vector<int>& vertices);

struct Witness {
  int type = 0;           // 1..4
  std::vector<int> path;  // vertex ids along the geodesic
};
std::optional<Witness> find_witness(const Nerve& n);

enum class TffKind { Finite, Infinite, Unknown, NotApplicable };
const char* tff_name(TffKind k);

struct TffVerdict {
  TffKind kind = TffKind::Unknown;
  long sigma_hat = -1;
  long tau_hat = -1;
  std::optional<Witness> witness;
  std::vector<std::string> missing;  // attributes that left the verdict open
  std::string reason;
};
TffVerdict is_tff(const Nerve& n);

// Chains of the dual tree: maximal geodesics between vertices of valence >= 3
// whose interior vertices have valence 2.
long chain_count(const DualTree& dt);
long chain_count(const NerveSkeleton& sk);

struct NonDegeneracy {
  Tri value = Tri::Unknown;
  std::vector<std::string> reasons;
};
NonDegeneracy nondegenerate_check(const ReductionTree& tree, const Nerve& n);
NonDegeneracy nondegenerate_check(const NerveSkeleton& sk, const Nerve& n, bool second_kind);

}  // namespace foliage
