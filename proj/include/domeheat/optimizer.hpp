#pragma once

#include <functional>
#include <span>
#include <vector>

#include "domeheat/heat_solver.hpp"

namespace domeheat {

enum class StopReason { RelChange, ChangeStagnation, MaxIter };

const char* to_string(StopReason reason);

struct OptimReport {
  int iterations = 0;
  std::vector<double> cost_history;   // size iterations + 1, cost of each iterate
  std::vector<double> error_history;  // relative control changes e_1 .. e_iterations
  StopReason stop_reason = StopReason::MaxIter;
  ControlTrajectory final_control;
  StateTrajectory final_state;  // forward trajectory of the final control
  std::vector<int> active_set_history;       // entries at a bound, per iterate
  std::vector<double> wall_seconds_history;  // cumulative, per iterate
  int armijo_warnings = 0;  // line searches that found no sufficient decrease
};

/// Terminal-mismatch plus control-energy cost: the terminal term integrates
/// (y(T) - y_d)^2 over the domain via the mass matrix, the control term uses
/// the rectangle rule over levels 1..n_steps matching the implicit stepping.
double cost(std::span<const double> terminal_state, const ControlTrajectory& control,
            const FemSystem& fem, const TimeGrid& grid, const ProblemConfig& config);

/// sum_{m=1..n_steps} tau * u^m' Mr u^m, the squared control norm on the
/// heater boundary over time.
double control_energy(const ControlTrajectory& control, const FemSystem& fem,
                      const TimeGrid& grid);

/// Nodal gradient of the reduced cost, beta p|_robin + lambda u, with the
/// adjoint evaluated at the left endpoint of each control interval so the
/// result is consistent with finite differences of the discrete cost.
ControlTrajectory reduced_gradient(const StateTrajectory& adjoint,
                                   const ControlTrajectory& control, const FemSystem& fem,
                                   const ProblemConfig& config);

/// Entrywise clamp onto [lower, upper].
ControlTrajectory project_box(ControlTrajectory u, double lower, double upper);

/// Zero-weight limit: u = u_a where beta p > 0, u = u_b where beta p < 0,
/// midpoint of the box where beta p == 0. Requires lambda == 0.
ControlTrajectory bang_bang_control(const StateTrajectory& adjoint, const FemSystem& fem,
                                    const ProblemConfig& config);

struct ArmijoResult {
  double step = 0.0;
  bool warning = false;  // no sufficient decrease within the halving budget
};

/// Backtracking line search: halve from initial_step until
/// J(P(u + step d)) <= current_cost - sigma step ||d||^2. On failure returns
/// the smallest tried step with the warning flag set.
ArmijoResult armijo_step(const ControlTrajectory& u, const ControlTrajectory& direction,
                         double lower, double upper, double current_cost,
                         const std::function<double(const ControlTrajectory&)>& evaluate_cost,
                         double initial_step, double sigma = 1e-4, int max_halvings = 30);

struct ProjGradOptions {
  bool use_armijo = false;  // constant step of the config otherwise
  /// Observer for every logged iterate (k = 0 is the initial guess, error 0).
  std::function<void(int k, const ControlTrajectory& u, double cost, double error)> on_iterate;
};

/// Projected gradient iteration: one forward and one backward solve per step,
/// update u <- P(u + step * d) with d the negative gradient, stopping on a
/// small relative change, a stagnating change, or the iteration budget.
/// With lambda == 0 the update is replaced by the bang-bang assignment (a
/// fixed-point iteration without a convergence guarantee).
OptimReport projected_gradient(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                               const ProblemConfig& config, const ControlTrajectory& u0,
                               const ProjGradOptions& opts = {});

}  // namespace domeheat
