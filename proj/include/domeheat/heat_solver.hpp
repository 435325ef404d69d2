#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "domeheat/assembly.hpp"
#include "domeheat/linalg.hpp"
#include "domeheat/mesh.hpp"

namespace domeheat {

struct TimeGrid {
  TimeGrid(double final_time, int n_steps) : final_time(final_time), n_steps(n_steps) {
    if (!(final_time > 0.0)) throw std::invalid_argument("TimeGrid: final_time must be positive");
    if (n_steps < 1) throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
  }
  double final_time;
  int n_steps;
  double tau() const { return final_time / n_steps; }
  int n_levels() const { return n_steps + 1; }
};

/// Nodal field at every time level; level m corresponds to time m*tau.
struct StateTrajectory {
  StateTrajectory() = default;
  StateTrajectory(int n_levels, int n_nodes)
      : n_levels(n_levels),
        n_nodes(n_nodes),
        values(static_cast<std::size_t>(n_levels) * n_nodes, 0.0) {}

  int n_levels = 0;
  int n_nodes = 0;
  Vector values;  // level-major

  std::span<double> level(int m) {
    return {values.data() + static_cast<std::size_t>(m) * n_nodes,
            static_cast<std::size_t>(n_nodes)};
  }
  std::span<const double> level(int m) const {
    return {values.data() + static_cast<std::size_t>(m) * n_nodes,
            static_cast<std::size_t>(n_nodes)};
  }
  double& at(int m, int i) { return values[static_cast<std::size_t>(m) * n_nodes + i]; }
  double at(int m, int i) const { return values[static_cast<std::size_t>(m) * n_nodes + i]; }
};

/// Heater control values over the ordered Robin node list at every time
/// level. Shares the StateTrajectory layout.
struct ControlTrajectory {
  ControlTrajectory() = default;
  ControlTrajectory(int n_levels, int n_nodes)
      : n_levels(n_levels),
        n_nodes(n_nodes),
        values(static_cast<std::size_t>(n_levels) * n_nodes, 0.0) {}

  static ControlTrajectory constant(const TimeGrid& grid, int n_robin_nodes, double value) {
    ControlTrajectory u(grid.n_levels(), n_robin_nodes);
    std::fill(u.values.begin(), u.values.end(), value);
    return u;
  }

  int n_levels = 0;
  int n_nodes = 0;
  Vector values;

  std::span<double> level(int m) {
    return {values.data() + static_cast<std::size_t>(m) * n_nodes,
            static_cast<std::size_t>(n_nodes)};
  }
  std::span<const double> level(int m) const {
    return {values.data() + static_cast<std::size_t>(m) * n_nodes,
            static_cast<std::size_t>(n_nodes)};
  }
  double& at(int m, int i) { return values[static_cast<std::size_t>(m) * n_nodes + i]; }
  double at(int m, int i) const { return values[static_cast<std::size_t>(m) * n_nodes + i]; }
};

/// All scalar problem data. Field comments give the config-file keys.
struct ProblemConfig {
  double pool_temperature = 20.0;     // g, Dirichlet value on the pool floor
  double robin_alpha = 100.0;         // alpha, heat-transfer coefficient on the heaters
  double robin_beta = 100.0;          // beta, control-to-flux coefficient on the heaters
  double control_weight = 1e-2;       // lambda, cost of control energy
  double final_time = 1.0;            // T
  int n_steps = 250;                  // n_steps
  double control_lower = 20.0;        // u_a
  double control_upper = 60.0;        // u_b
  double target_temperature = 30.0;   // y_d, desired terminal temperature
  double initial_temperature = 0.0;   // y_0
  double step_length = 1.618;         // gamma, projected-gradient step
  double rel_change_tol = 1e-1;       // eps1
  double stagnation_tol = 1e-2;       // eps2
  int max_iterations = 20;            // k_max

  /// Violated invariants as "key: problem" strings; empty when valid.
  std::vector<std::string> validate() const;
  TimeGrid time_grid() const { return {final_time, n_steps}; }
};

/// Relative tolerance of the inner CG solves; tighter than the cg_solve
/// default so accumulated solver noise stays below the 1e-10 checks on whole
/// trajectories.
inline constexpr double kLinearSolveRelTol = 1e-12;

using SourceFn = std::function<double(double x, double y, double t)>;
using LevelCallback = std::function<void(int level, std::span<const double> state)>;

struct ForwardOptions {
  SourceFn source;                       // optional volumetric source (verification runs)
  const Vector* initial_state = nullptr; // overrides the constant initial temperature
  LevelCallback on_level;                // invoked after each accepted time level
};

/// Implicit Euler for the forward heat problem: per step
///   (M + tau (K + alpha Mr)) y^{m+1} = M y^m + tau beta Mr u^{m+1}
/// solved on the non-pool nodes, pool nodes held at the water temperature at
/// every level. The control enters at the new time level.
StateTrajectory solve_forward(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                              const ProblemConfig& config, const ControlTrajectory& control,
                              const ForwardOptions& opts = {});

/// Backward-in-time adjoint: terminal value y(T) - y_d on the solved nodes,
/// zero on the pool floor, then (M + tau (K + alpha Mr)) p^m = M p^{m+1}.
StateTrajectory solve_adjoint(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                              const ProblemConfig& config, std::span<const double> terminal_state);

/// Long-time limit for a constant control: (K + alpha Mr) y = beta Mr u with
/// the pool floor held at the water temperature.
Vector steady_state(const TriMesh& mesh, const FemSystem& fem, const ProblemConfig& config,
                    double control_value);

}  // namespace domeheat
