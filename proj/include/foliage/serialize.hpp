#pragma once

// JSON documents for trees, nerves and reports, and Graphviz exports.
// Every *_from_json inverts the matching *_to_json exactly.

#include <string>

#include <json.hpp>

#include "foliage/curvecomb.hpp"
#include "foliage/family.hpp"
#include "foliage/nerve.hpp"
#include "foliage/report.hpp"

namespace foliage {

using Json = nlohmann::json;

Json tree_to_json(const ReductionTree& tree);
ReductionTree tree_from_json(const Json& j);

Json dual_tree_to_json(const DualTree& dt);
Json separatrix_to_json(const SeparatrixModel& sep);

Json nerve_to_json(const Nerve& n);
Nerve nerve_from_json(const Json& j);

Json report_to_json(const InvariantReport& r);
InvariantReport report_from_json(const Json& j);

Json verdict_to_json(const TffVerdict& v);
Json prune_to_json(const Nerve& n, const PruneResult& p);
Json equising_to_json(const EquisingReport& r);

std::string dual_tree_dot(const DualTree& dt);
std::string nerve_dot(const Nerve& n);

}  // namespace foliage
