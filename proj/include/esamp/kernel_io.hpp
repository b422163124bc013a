#pragma once

#include <nlohmann/json.hpp>

#include "esamp/kernel.hpp"

namespace esamp {

// Wire format:
//   { "source": {"label": "X", "size": 2, "names": ["a","b"]},
//     "target": {...},
//     "rows":   { "a": ["1/2","1/2"], "b": ["0","1"] } }
// Rows appear only for defined inputs; probabilities are exact "p/q" strings.
nlohmann::ordered_json space_to_json(const FiniteSpace& s);
FiniteSpace space_from_json(const nlohmann::json& j);

nlohmann::ordered_json kernel_to_json(const PartialKernel& k);
PartialKernel kernel_from_json(const nlohmann::json& j);

}  // namespace esamp
