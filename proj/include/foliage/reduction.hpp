#pragma once

// Iterated point blow-ups of a plane 1-form until every point of the final
// divisor is reduced, with divisor weights, proximity and Galois orbits.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foliage/localclass.hpp"
#include "foliage/poly2.hpp"
#include "foliage/upoly.hpp"

namespace foliage {

enum class ChartKind { Origin, X, Y };
enum class DicriticalPolicy { Abort, Mark };

const char* chart_name(ChartKind c);

struct ReduceConfig {
  int max_height = 64;
  DicriticalPolicy dicritical = DicriticalPolicy::Abort;
  bool pre_reduction = false;  // stop at points with distinct eigenvalues
  bool classify = true;        // fill ReducedSingularity records of cime points
  ClassifyConfig local;
};

struct InfNearPoint {
  int id = 0;
  int height = 0;
  int parent = -1;
  ChartKind chart = ChartKind::Origin;
  std::vector<ChartKind> path;  // chart kinds from the origin, length = height
  FieldPtr field;               // field of definition of the representative
  // X-chart points: root v0 of `factor` (irreducible over the parent field).
  std::optional<UPoly> factor;
  FieldElem coord;        // v0 in the X-chart of the parent blow-up
  int orbit = 1;          // number of conjugate copies in the geometric tree
  int orbit_rel = 1;      // copies per copy of the parent
  int comp_s = -1;        // divisor component {s = 0} through the point
  int comp_t = -1;        // divisor component {t = 0} through the point
  std::vector<int> proximate;
  OneForm form;           // local strict form at the point
  int nu = 0;             // order of the strict form, 0 when regular
  bool singular = false;
  bool reduced = false;   // the couple (foliation, divisor) needs no blow-up
  bool blown_up = false;
  int division_exponent = -1;
  int created = -1;       // component created by blowing up this point
  std::optional<ReducedSingularity> local;  // cime singular points only

  bool corner() const { return comp_s >= 0 && comp_t >= 0; }
  std::vector<int> comps() const;
};

struct DivisorComp {
  int id = 0;
  int creator = -1;
  int e = -1;
  int m_omega = 0;
  int m_ideal = 0;
  int m_f = 0;  // filled by curvecomb
  bool dicritical = false;
  int orbit = 1;
  FieldPtr field;
  std::vector<int> points;  // points lying on the component, blown up or not
};

struct ReductionTree {
  OneForm input;       // saturated input form
  OneForm original;    // as given
  bool saturated = false;  // a common factor was divided out
  bool pre_reduction = false;
  std::vector<InfNearPoint> points;
  std::vector<DivisorComp> comps;
  int height = 0;
  std::vector<std::string> dicritical_log;
  std::vector<FieldPtr> fields;  // every extension created, in order

  std::vector<int> cime() const;        // final singular points
  std::vector<int> final_points() const;  // points never blown up
  bool has_dicritical() const;
  const InfNearPoint& point(int id) const { return points.at(id); }
  const DivisorComp& comp(int id) const { return comps.at(id); }
};

struct BlowUpResult {
  OneForm strict;
  int k = 0;  // division exponent
  bool dicritical = false;
};

BlowUpResult blow_up(const OneForm& w, ChartKind chart);

// Whether the point needs no blow-up: reduced singular with invariant divisor
// branches, or regular with each branch invariant or transverse.
bool couple_reduced(const OneForm& w, bool has_s, bool has_t, bool pre_reduction);

ReductionTree reduce(const OneForm& w, const ReduceConfig& cfg = {});
ReductionTree pre_reduce(const OneForm& w, ReduceConfig cfg = {});

// Fills ReducedSingularity records of all cime points.
void classify_tree(ReductionTree& tree, const ClassifyConfig& cfg);

struct RecurrenceReport {
  bool ok = true;
  std::vector<int> offending;  // component ids
  std::map<int, int> recomputed;
};
RecurrenceReport multiplicity_recurrence_check(const ReductionTree& tree);

// Geometric expansion of Galois orbits.
struct GeoComp {
  int comp = 0;
  int copy = 0;
  std::string label() const;
};
struct GeoPoint {
  int point = 0;
  int copy = 0;
  int comp_s = -1, comp_t = -1;  // geometric component indices
  std::string label() const;
};
struct GeoTree {
  std::vector<GeoComp> comps;
  std::vector<GeoPoint> points;  // every point copy, blown up or not
  std::map<std::pair<int, int>, int> comp_index;   // (comp, copy) -> index
  std::map<std::pair<int, int>, int> point_index;  // (point, copy) -> index
};
GeoTree expand(const ReductionTree& tree);

struct DualVertex {
  int comp = 0;
  int copy = 0;
  int e = -1;
  int m_omega = 0;
  int arrows = 0;
  bool dicritical = false;
  std::string label;
};
struct DualTree {
  std::vector<DualVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> arrows;  // (vertex, geometric point index)
  std::string canonical;
  std::string hash;
  std::vector<std::vector<int>> adjacency() const;
};
DualTree dual_tree(const ReductionTree& tree);

// sigma(v, 1) = v + 1, sigma(v, 2) = 2v + 1,
// sigma(v, h + 2) = sigma(v, h + 1) + sigma(v, h) + v + h.
Integer determinacy_bound(int v, int h);

}  // namespace foliage
