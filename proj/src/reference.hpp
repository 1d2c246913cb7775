#pragma once

#include <cstdint>
#include <optional>

#include "environment.hpp"

namespace inash {

/// Single-robot shortest obstacle-avoiding length from init into the goal,
/// other robots ignored. Visibility graph over polygons circumscribing the
/// radius-inflated obstacles (arcs replaced by `arc_segments`-gon pieces),
/// so the result is a feasible length at most 1/cos(pi/arc_segments) above
/// the true optimum. Nothing when the goal is unreachable.
std::optional<double> reference_optimum(const Workspace& w, const RobotSpec& r, int arc_segments = 32);

/// Same quantity estimated on one large random graph (k_ref extend steps),
/// searched without regard to edge direction.
std::optional<double> dense_reference(const Workspace& w, const RobotSpec& r, int k_ref = 20000,
                                      std::uint64_t seed = 1);

} // namespace inash
