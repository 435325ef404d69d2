#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "domeheat/heat_solver.hpp"
#include "domeheat/optimizer.hpp"

namespace domeheat {

std::string format_double(double v);  // shortest exact representation

/// Columns k, cost, rel_change, active_set, wall_seconds; the rel_change
/// field is empty for k = 0.
void write_iteration_log(std::ostream& os, const OptimReport& report);

/// Columns level, node, value over the Robin node list (node is the mesh
/// vertex index).
void write_control_csv(std::ostream& os, const ControlTrajectory& control,
                       std::span<const int> robin_nodes);

/// Columns level, node, value for a full trajectory.
void write_trajectory_csv(std::ostream& os, const StateTrajectory& trajectory);

/// Streaming variant: one level at a time.
void write_trajectory_header(std::ostream& os);
void write_trajectory_level(std::ostream& os, int level, std::span<const double> state);

}  // namespace domeheat
