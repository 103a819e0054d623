#pragma once

#include "json.hpp"
#include "tierselect/analysis.hpp"
#include "tierselect/model.hpp"

namespace tierselect::detail {

nlohmann::json scenario_to_json(const Scenario& s);
nlohmann::json result_to_json(const EvaluationResult& r);
EvaluationResult result_from_json(const nlohmann::json& j);
nlohmann::json violation_to_json(const Violation& v);
nlohmann::json utility_to_json(const EffectiveUtility& u);

}  // namespace tierselect::detail
