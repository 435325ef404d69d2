#include "domeheat/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <utility>

namespace domeheat {

namespace {

int count_active(const ControlTrajectory& u, double lower, double upper) {
  int active = 0;
  for (double v : u.values)
    if (v == lower || v == upper) ++active;
  return active;
}

double euclidean_diff(const ControlTrajectory& a, const ControlTrajectory& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::RelChange: return "rel_change";
    case StopReason::ChangeStagnation: return "stagnation";
    case StopReason::MaxIter: return "max_iter";
  }
  return "unknown";
}

double control_energy(const ControlTrajectory& control, const FemSystem& fem,
                      const TimeGrid& grid) {
  const int n = fem.robin_mass.n_rows;
  const double tau = grid.tau();
  Vector full(static_cast<std::size_t>(n), 0.0);
  double energy = 0.0;
  for (int m = 1; m <= grid.n_steps; ++m) {
    scatter(control.level(m), fem.robin_nodes, full);
    energy += tau * dot(full, spmv(fem.robin_mass, full));
  }
  return energy;
}

double cost(std::span<const double> terminal_state, const ControlTrajectory& control,
            const FemSystem& fem, const TimeGrid& grid, const ProblemConfig& config) {
  const int n = fem.mass.n_rows;
  if (static_cast<int>(terminal_state.size()) != n)
    throw std::invalid_argument("cost: terminal_state size mismatch");
  Vector mismatch(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mismatch[i] = terminal_state[i] - config.target_temperature;
  double value = 0.5 * dot(mismatch, spmv(fem.mass, mismatch));
  if (config.control_weight != 0.0)
    value += 0.5 * config.control_weight * control_energy(control, fem, grid);
  return value;
}

ControlTrajectory reduced_gradient(const StateTrajectory& adjoint,
                                   const ControlTrajectory& control, const FemSystem& fem,
                                   const ProblemConfig& config) {
  ControlTrajectory grad(control.n_levels, control.n_nodes);
  for (int m = 0; m < control.n_levels; ++m) {
    // control level m acts on the step interval ending at t_m; evaluating
    // the adjoint at the interval's left endpoint makes the nodal gradient
    // match finite differences of the discrete cost (the right endpoint
    // leaves an O(tau*beta) terminal artifact)
    const int adjoint_level = m > 0 ? m - 1 : 0;
    for (int i = 0; i < control.n_nodes; ++i)
      grad.at(m, i) = config.robin_beta * adjoint.at(adjoint_level, fem.robin_nodes[i]) +
                      config.control_weight * control.at(m, i);
  }
  return grad;
}

ControlTrajectory project_box(ControlTrajectory u, double lower, double upper) {
  if (!(lower <= upper)) throw std::invalid_argument("project_box: lower must be <= upper");
  for (double& v : u.values) v = std::max(lower, std::min(upper, v));
  return u;
}

ControlTrajectory bang_bang_control(const StateTrajectory& adjoint, const FemSystem& fem,
                                    const ProblemConfig& config) {
  if (config.control_weight != 0.0)
    throw std::invalid_argument("bang_bang_control: requires lambda == 0");
  const double mid = 0.5 * (config.control_lower + config.control_upper);
  ControlTrajectory u(adjoint.n_levels, static_cast<int>(fem.robin_nodes.size()));
  for (int m = 0; m < u.n_levels; ++m)
    for (int i = 0; i < u.n_nodes; ++i) {
      const double bp = config.robin_beta * adjoint.at(m, fem.robin_nodes[i]);
      u.at(m, i) = bp > 0.0 ? config.control_lower : (bp < 0.0 ? config.control_upper : mid);
    }
  return u;
}

ArmijoResult armijo_step(const ControlTrajectory& u, const ControlTrajectory& direction,
                         double lower, double upper, double current_cost,
                         const std::function<double(const ControlTrajectory&)>& evaluate_cost,
                         double initial_step, double sigma, int max_halvings) {
  if (!(initial_step > 0.0)) throw std::invalid_argument("armijo_step: initial_step must be > 0");
  double dir_norm_sq = 0.0;
  for (double v : direction.values) dir_norm_sq += v * v;

  double step = initial_step;
  for (int h = 0; h <= max_halvings; ++h) {
    ControlTrajectory candidate = u;
    for (std::size_t i = 0; i < candidate.values.size(); ++i)
      candidate.values[i] += step * direction.values[i];
    candidate = project_box(std::move(candidate), lower, upper);
    const double candidate_cost = evaluate_cost(candidate);
    if (candidate_cost <= current_cost - sigma * step * dir_norm_sq) return {step, false};
    if (h < max_halvings) step *= 0.5;
  }
  return {step, true};
}

OptimReport projected_gradient(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                               const ProblemConfig& config, const ControlTrajectory& u0,
                               const ProjGradOptions& opts) {
  for (double v : u0.values)
    if (!(v >= config.control_lower && v <= config.control_upper))
      throw std::invalid_argument("projected_gradient: initial guess violates the box");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  OptimReport report;
  ControlTrajectory u = u0;
  StateTrajectory y = solve_forward(mesh, fem, grid, config, u);
  double current_cost = cost(y.level(grid.n_steps), u, fem, grid, config);

  report.cost_history.push_back(current_cost);
  report.active_set_history.push_back(count_active(u, config.control_lower, config.control_upper));
  report.wall_seconds_history.push_back(elapsed());
  if (opts.on_iterate) opts.on_iterate(0, u, current_cost, 0.0);

  double prev_error = 0.0;
  for (int k = 0;; ++k) {
    const StateTrajectory p = solve_adjoint(mesh, fem, grid, config, y.level(grid.n_steps));

    ControlTrajectory u_next;
    std::optional<StateTrajectory> cached_forward;
    if (config.control_weight == 0.0) {
      u_next = bang_bang_control(p, fem, config);
    } else {
      ControlTrajectory direction = reduced_gradient(p, u, fem, config);
      for (double& v : direction.values) v = -v;

      double step = config.step_length;
      if (opts.use_armijo) {
        auto evaluate = [&](const ControlTrajectory& candidate) {
          cached_forward = solve_forward(mesh, fem, grid, config, candidate);
          return cost(cached_forward->level(grid.n_steps), candidate, fem, grid, config);
        };
        const ArmijoResult ls = armijo_step(u, direction, config.control_lower,
                                            config.control_upper, current_cost, evaluate,
                                            config.step_length);
        step = ls.step;
        if (ls.warning) ++report.armijo_warnings;
      }

      u_next = u;
      for (std::size_t i = 0; i < u_next.values.size(); ++i)
        u_next.values[i] += step * direction.values[i];
      u_next = project_box(std::move(u_next), config.control_lower, config.control_upper);
    }

    const double u_norm = norm2(u.values);
    double error = euclidean_diff(u_next, u);
    if (u_norm > 0.0) error /= u_norm;  // absolute change when the iterate is zero

    u = std::move(u_next);
    // the armijo evaluation of the accepted candidate doubles as the next
    // forward solve
    y = cached_forward ? std::move(*cached_forward) : solve_forward(mesh, fem, grid, config, u);
    current_cost = cost(y.level(grid.n_steps), u, fem, grid, config);

    report.iterations = k + 1;
    report.cost_history.push_back(current_cost);
    report.error_history.push_back(error);
    report.active_set_history.push_back(
        count_active(u, config.control_lower, config.control_upper));
    report.wall_seconds_history.push_back(elapsed());
    if (opts.on_iterate) opts.on_iterate(k + 1, u, current_cost, error);

    if (error < config.rel_change_tol) {
      report.stop_reason = StopReason::RelChange;
      break;
    }
    if (k >= 1 && std::abs(error - prev_error) < config.stagnation_tol) {
      report.stop_reason = StopReason::ChangeStagnation;
      break;
    }
    prev_error = error;
    if (report.iterations >= config.max_iterations) {
      report.stop_reason = StopReason::MaxIter;
      break;
    }
  }

  report.final_control = std::move(u);
  report.final_state = std::move(y);
  return report;
}

}  // namespace domeheat
