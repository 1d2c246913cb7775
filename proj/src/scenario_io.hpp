#pragma once

#include <string>

#include <json.hpp>

#include "environment.hpp"

namespace inash {

using json = nlohmann::json;

// Scenario file schema:
//   { "bounds": [[x0,y0],[x1,y1]],
//     "obstacles": [ {"rect": [[x0,y0],[x1,y1]]} | {"circle": {"c": [x,y], "r": v}} ],
//     "robots": [ {"id": 1, "radius": 0.5, "init": [x,y], "goal": <shape>} ],
//     "seed": u64 }
// Unknown keys are rejected at every level. Robots are returned sorted by id.

json shape_to_json(const Shape& s);
Shape shape_from_json(const json& j, const std::string& where);
json point_to_json(Point2 p);
Point2 point_from_json(const json& j, const std::string& where);

json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);
/// Malformed JSON throws json::parse_error; anything else wrong throws
/// ScenarioError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

} // namespace inash
