#pragma once

#include <nlohmann/json.hpp>

#include "esamp/classify.hpp"

namespace esamp {

// Stable, versioned JSON encodings.  Field order is fixed (ordered_json) so
// identical inputs always serialize to identical bytes.
nlohmann::ordered_json verdict_to_json(const EmpiricalVerdict& v);
nlohmann::ordered_json measure_to_json(const EmpiricalMeasure& m);
EmpiricalMeasure measure_from_json(const nlohmann::json& j);

nlohmann::ordered_json horizon_to_json(const HorizonSchedule& h);
HorizonSchedule horizon_from_json(const nlohmann::json& j, size_t n);

}  // namespace esamp
