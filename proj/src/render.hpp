#pragma once

#include <optional>
#include <string>
#include <vector>

#include "environment.hpp"

namespace inash {

/// Standalone SVG 1.1 document: obstacles outlined in black, goals dashed,
/// one colored polyline per robot path, an 'O' (circle of three times the
/// robot radius) at each start and an 'X' at each path end. World y points up.
std::string render_svg(const Workspace& w, const std::vector<RobotSpec>& robots,
                       const std::vector<std::optional<std::vector<Point2>>>& paths);

} // namespace inash
