#pragma once

#include <string_view>
#include <vector>

#include "tierselect/model.hpp"

namespace tierselect {

/// Catalog of the standard placement metrics with their ids, preference
/// directions, and units. Every entry has weight 0 and no bounds; scenarios
/// supply both. Entries flagged `optional` may be omitted by any scenario.
///
/// `orbital_altitude` defaults to LowerBetter (shorter propagation delay);
/// scenarios that treat altitude differently declare the direction explicitly.
const std::vector<MetricDef>& standard_registry();

/// Registry entry for `id`, or nullptr.
const MetricDef* find_standard_metric(std::string_view id);

}  // namespace tierselect
