#include "domeheat/heat_solver.hpp"

#include <algorithm>
#include <cmath>

namespace domeheat {

namespace {

// Shared plumbing of the two time-stepping loops: the constant system matrix
// restricted to the solved nodes and the lifting of the Dirichlet datum.
struct SteppingSystem {
  SparseMatrix system_dof;  // (M + tau (K + alpha Mr)) on dof x dof
  Vector dirichlet_lift;    // dof rows of system * (g on pool nodes)
  Vector dirichlet_full;    // g on pool nodes, 0 elsewhere
};

SteppingSystem build_stepping_system(const FemSystem& fem, double tau,
                                     const ProblemConfig& config) {
  const SparseMatrix spatial = add_scaled(1.0, fem.stiffness, config.robin_alpha, fem.robin_mass);
  const SparseMatrix system = add_scaled(1.0, fem.mass, tau, spatial);
  SteppingSystem s;
  s.system_dof = extract_submatrix(system, fem.dof_nodes, fem.dof_nodes);
  s.dirichlet_full.assign(static_cast<std::size_t>(fem.mass.n_rows), 0.0);
  for (int d : fem.dirichlet_nodes) s.dirichlet_full[d] = config.pool_temperature;
  s.dirichlet_lift = gather(spmv(system, s.dirichlet_full), fem.dof_nodes);
  return s;
}

void check_control_shape(const FemSystem& fem, const TimeGrid& grid,
                         const ControlTrajectory& control) {
  if (control.n_levels != grid.n_levels() ||
      control.n_nodes != static_cast<int>(fem.robin_nodes.size()))
    throw std::invalid_argument("solve_forward: control shape does not match grid and mesh");
}

}  // namespace

std::vector<std::string> ProblemConfig::validate() const {
  std::vector<std::string> issues;
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(pool_temperature)) issues.push_back("g: must be finite");
  if (!finite(robin_alpha)) issues.push_back("alpha: must be finite");
  if (!finite(robin_beta)) issues.push_back("beta: must be finite");
  if (!(control_weight >= 0.0)) issues.push_back("lambda: must be >= 0");
  if (!(final_time > 0.0)) issues.push_back("T: must be > 0");
  if (n_steps < 1) issues.push_back("n_steps: must be >= 1");
  if (!finite(control_lower) || !finite(control_upper) || !(control_lower <= control_upper))
    issues.push_back("u_a, u_b: bounds must be finite with u_a <= u_b");
  if (!finite(target_temperature)) issues.push_back("y_d: must be finite");
  if (!finite(initial_temperature)) issues.push_back("y_0: must be finite");
  if (!(step_length > 0.0)) issues.push_back("gamma: must be > 0");
  if (!(rel_change_tol > 0.0)) issues.push_back("eps1: must be > 0");
  if (!(stagnation_tol > 0.0)) issues.push_back("eps2: must be > 0");
  if (max_iterations < 1) issues.push_back("k_max: must be >= 1");
  return issues;
}

StateTrajectory solve_forward(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                              const ProblemConfig& config, const ControlTrajectory& control,
                              const ForwardOptions& opts) {
  const int n = fem.mass.n_rows;
  check_control_shape(fem, grid, control);
  if (opts.initial_state && static_cast<int>(opts.initial_state->size()) != n)
    throw std::invalid_argument("solve_forward: initial_state size mismatch");

  const double tau = grid.tau();
  const SteppingSystem sys = build_stepping_system(fem, tau, config);

  StateTrajectory y(grid.n_levels(), n);
  {
    auto y0 = y.level(0);
    if (opts.initial_state)
      std::copy(opts.initial_state->begin(), opts.initial_state->end(), y0.begin());
    else
      std::fill(y0.begin(), y0.end(), config.initial_temperature);
    for (int d : fem.dirichlet_nodes) y0[d] = config.pool_temperature;
  }
  if (opts.on_level) opts.on_level(0, y.level(0));

  Vector x = gather(y.level(0), fem.dof_nodes);
  Vector control_full(static_cast<std::size_t>(n), 0.0);
  Vector source_nodal(static_cast<std::size_t>(n), 0.0);

  for (int m = 0; m < grid.n_steps; ++m) {
    Vector rhs_full = spmv(fem.mass, y.level(m));
    scatter(control.level(m + 1), fem.robin_nodes, control_full);
    const Vector robin_rhs = spmv(fem.robin_mass, control_full);
    for (int i = 0; i < n; ++i) rhs_full[i] += tau * config.robin_beta * robin_rhs[i];
    if (opts.source) {
      const double t = (m + 1) * tau;
      for (int i = 0; i < n; ++i)
        source_nodal[i] = opts.source(mesh.vertices[i].x, mesh.vertices[i].y, t);
      const Vector f = spmv(fem.mass, source_nodal);
      for (int i = 0; i < n; ++i) rhs_full[i] += tau * f[i];
    }
    Vector rhs = gather(rhs_full, fem.dof_nodes);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= sys.dirichlet_lift[i];

    try {
      x = cg_solve(sys.system_dof, rhs, x, kLinearSolveRelTol).x;
    } catch (const SolverFailure& e) {
      throw SolverFailure("forward time step " + std::to_string(m + 1) + ": " + e.what(),
                          e.rel_residual, e.iterations);
    }

    auto lvl = y.level(m + 1);
    std::copy(sys.dirichlet_full.begin(), sys.dirichlet_full.end(), lvl.begin());
    scatter(x, fem.dof_nodes, lvl);
    if (opts.on_level) opts.on_level(m + 1, lvl);
  }
  return y;
}

StateTrajectory solve_adjoint(const TriMesh& mesh, const FemSystem& fem, const TimeGrid& grid,
                              const ProblemConfig& config,
                              std::span<const double> terminal_state) {
  (void)mesh;
  const int n = fem.mass.n_rows;
  if (static_cast<int>(terminal_state.size()) != n)
    throw std::invalid_argument("solve_adjoint: terminal_state size mismatch");

  const double tau = grid.tau();
  const SteppingSystem sys = build_stepping_system(fem, tau, config);

  StateTrajectory p(grid.n_levels(), n);
  {
    auto pT = p.level(grid.n_steps);
    for (int i = 0; i < n; ++i) pT[i] = terminal_state[i] - config.target_temperature;
    for (int d : fem.dirichlet_nodes) pT[d] = 0.0;  // homogeneous Dirichlet
  }

  Vector x = gather(p.level(grid.n_steps), fem.dof_nodes);
  for (int m = grid.n_steps - 1; m >= 0; --m) {
    const Vector rhs = gather(spmv(fem.mass, p.level(m + 1)), fem.dof_nodes);
    try {
      x = cg_solve(sys.system_dof, rhs, x, kLinearSolveRelTol).x;
    } catch (const SolverFailure& e) {
      throw SolverFailure("adjoint time level " + std::to_string(m) + ": " + e.what(),
                          e.rel_residual, e.iterations);
    }
    auto lvl = p.level(m);
    std::fill(lvl.begin(), lvl.end(), 0.0);
    scatter(x, fem.dof_nodes, lvl);
  }
  return p;
}

Vector steady_state(const TriMesh& mesh, const FemSystem& fem, const ProblemConfig& config,
                    double control_value) {
  (void)mesh;
  const int n = fem.mass.n_rows;
  const SparseMatrix spatial = add_scaled(1.0, fem.stiffness, config.robin_alpha, fem.robin_mass);
  const SparseMatrix spatial_dof = extract_submatrix(spatial, fem.dof_nodes, fem.dof_nodes);

  Vector dirichlet_full(static_cast<std::size_t>(n), 0.0);
  for (int d : fem.dirichlet_nodes) dirichlet_full[d] = config.pool_temperature;
  const Vector lift = gather(spmv(spatial, dirichlet_full), fem.dof_nodes);

  Vector control_full(static_cast<std::size_t>(n), 0.0);
  for (int r : fem.robin_nodes) control_full[r] = control_value;
  Vector rhs = gather(spmv(fem.robin_mass, control_full), fem.dof_nodes);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = config.robin_beta * rhs[i] - lift[i];

  const Vector x0(rhs.size(), config.pool_temperature);
  const Vector x = cg_solve(spatial_dof, rhs, x0, kLinearSolveRelTol).x;

  Vector y = dirichlet_full;
  scatter(x, fem.dof_nodes, y);
  return y;
}

}  // namespace domeheat
