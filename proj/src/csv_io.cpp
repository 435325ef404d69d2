#include "domeheat/csv_io.hpp"

#include <cstdio>
#include <ostream>

namespace domeheat {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_iteration_log(std::ostream& os, const OptimReport& report) {
  os << "k,cost,rel_change,active_set,wall_seconds\n";
  char buf[64];
  for (int k = 0; k <= report.iterations; ++k) {
    os << k << ',' << format_double(report.cost_history[k]) << ',';
    if (k > 0) os << format_double(report.error_history[k - 1]);
    std::snprintf(buf, sizeof buf, ",%d,%.3f\n", report.active_set_history[k],
                  report.wall_seconds_history[k]);
    os << buf;
  }
}

void write_control_csv(std::ostream& os, const ControlTrajectory& control,
                       std::span<const int> robin_nodes) {
  os << "level,node,value\n";
  for (int m = 0; m < control.n_levels; ++m)
    for (int i = 0; i < control.n_nodes; ++i)
      os << m << ',' << robin_nodes[i] << ',' << format_double(control.at(m, i)) << '\n';
}

void write_trajectory_csv(std::ostream& os, const StateTrajectory& trajectory) {
  write_trajectory_header(os);
  for (int m = 0; m < trajectory.n_levels; ++m) write_trajectory_level(os, m, trajectory.level(m));
}

void write_trajectory_header(std::ostream& os) { os << "level,node,value\n"; }

void write_trajectory_level(std::ostream& os, int level, std::span<const double> state) {
  for (std::size_t i = 0; i < state.size(); ++i)
    os << level << ',' << i << ',' << format_double(state[i]) << '\n';
}

}  // namespace domeheat
