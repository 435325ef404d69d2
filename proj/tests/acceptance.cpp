// End-to-end acceptance suite. Each criterion prints exactly one
// [PASS]/[FAIL] line; the exit code is nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "domeheat/commands.hpp"
#include "domeheat/config_io.hpp"
#include "domeheat/csv_io.hpp"
#include "domeheat/optimizer.hpp"
#include "domeheat/vtk_io.hpp"

using namespace domeheat;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHeaterAngle = kPi / 12;

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename Fn>
void run_criterion(int number, const std::string& name, Fn&& fn) {
  try {
    std::string detail;
    const bool pass = fn(detail);
    report(number, name, pass, detail);
  } catch (const std::exception& e) {
    report(number, name, false, std::string("exception: ") + e.what());
  }
}

Vector ones(int n) { return Vector(static_cast<std::size_t>(n), 1.0); }

// ---------------------------------------------------------------------------
// criterion 1: element oracles on the unit right triangle
// ---------------------------------------------------------------------------
bool element_oracles(std::string& detail) {
  TriMesh tri;
  tri.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  tri.triangles = {{0, 1, 2}};
  tri.boundary_edges = {{0, 1, BoundaryTag::HeaterRight},
                        {1, 2, BoundaryTag::Glass},
                        {2, 0, BoundaryTag::Glass}};

  const SparseMatrix mass = assemble_mass(tri);
  const SparseMatrix stiffness = assemble_stiffness(tri);
  const SparseMatrix edge = assemble_boundary_mass(tri, {BoundaryTag::HeaterRight});

  const double mass_expect[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  const double stiff_expect[3][3] = {{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(mass.coeff(i, j) - mass_expect[i][j] / 24.0));
      worst = std::max(worst, std::abs(stiffness.coeff(i, j) - stiff_expect[i][j] / 2.0));
    }
  // edge (0,1) has unit length
  worst = std::max(worst, std::abs(edge.coeff(0, 0) - 2.0 / 6.0));
  worst = std::max(worst, std::abs(edge.coeff(1, 1) - 2.0 / 6.0));
  worst = std::max(worst, std::abs(edge.coeff(0, 1) - 1.0 / 6.0));
  worst = std::max(worst, std::abs(edge.coeff(1, 0) - 1.0 / 6.0));
  detail = "max deviation " + format_double(worst);
  return worst <= 1e-14;
}

// ---------------------------------------------------------------------------
// criterion 2: partition of unity / conservation identities, levels 0..3
// ---------------------------------------------------------------------------
bool conservation_identities(std::string& detail) {
  double worst = 0.0;
  for (int level = 0; level <= 3; ++level) {
    const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, level);
    const FemSystem fem = build_fem_system(mesh);
    const Vector one = ones(mesh.n_vertices());

    const double area = total_area(mesh);
    const double mass_integral = dot(one, spmv(fem.mass, one));
    worst = std::max(worst, std::abs(mass_integral - area) / area);

    const double robin_len =
        boundary_length(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight});
    const double robin_integral = dot(one, spmv(fem.robin_mass, one));
    worst = std::max(worst, std::abs(robin_integral - robin_len) / robin_len);

    double diag_scale = 0.0;
    for (int i = 0; i < mesh.n_vertices(); ++i)
      diag_scale = std::max(diag_scale, fem.stiffness.coeff(i, i));
    const Vector k1 = spmv(fem.stiffness, one);
    for (double v : k1) worst = std::max(worst, std::abs(v) / diag_scale);
  }
  detail = "max relative deviation " + format_double(worst) + " over levels 0..3";
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// criterion 3: compatible constant state is preserved
// ---------------------------------------------------------------------------
bool fixed_point(std::string& detail) {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  const FemSystem fem = build_fem_system(mesh);
  ProblemConfig config;  // alpha = beta = 100, g = 20
  config.initial_temperature = 20.0;
  config.n_steps = 125;
  const TimeGrid grid = config.time_grid();
  const ControlTrajectory u =
      ControlTrajectory::constant(grid, static_cast<int>(fem.robin_nodes.size()), 20.0);

  const StateTrajectory y = solve_forward(mesh, fem, grid, config, u);
  double worst = 0.0;
  for (double v : y.values) worst = std::max(worst, std::abs(v - 20.0));
  detail = "max deviation from 20: " + format_double(worst) + " on " +
           std::to_string(mesh.n_vertices()) + " nodes / 125 steps";
  return worst <= 1e-10;
}

// ---------------------------------------------------------------------------
// criterion 4: manufactured-solution convergence on the unit square
// ---------------------------------------------------------------------------
bool manufactured_convergence(std::string& detail) {
  const double T = 0.5;
  auto exact = [](double x, double y, double t) {
    return std::exp(-t) * std::sin(kPi * x) * std::sin(kPi * y);
  };

  auto error_for = [&](int cells, int n_steps) {
    const TriMesh mesh = generate_unit_square(cells);
    const FemSystem fem = build_fem_system(mesh);
    ProblemConfig config;
    config.pool_temperature = 0.0;
    config.final_time = T;
    config.n_steps = n_steps;
    const TimeGrid grid = config.time_grid();

    Vector initial(static_cast<std::size_t>(mesh.n_vertices()));
    for (int i = 0; i < mesh.n_vertices(); ++i)
      initial[i] = exact(mesh.vertices[i].x, mesh.vertices[i].y, 0.0);
    ForwardOptions opts;
    opts.initial_state = &initial;
    opts.source = [&](double x, double y, double t) {
      return (2.0 * kPi * kPi - 1.0) * exact(x, y, t);
    };

    const ControlTrajectory u = ControlTrajectory::constant(grid, 0, 0.0);
    const StateTrajectory sol = solve_forward(mesh, fem, grid, config, u, opts);
    Vector err(static_cast<std::size_t>(mesh.n_vertices()));
    for (int i = 0; i < mesh.n_vertices(); ++i)
      err[i] = sol.at(grid.n_steps, i) - exact(mesh.vertices[i].x, mesh.vertices[i].y, T);
    return std::sqrt(dot(err, spmv(fem.mass, err)));
  };

  const double e0 = error_for(8, 25);
  const double e1 = error_for(16, 100);
  const double e2 = error_for(32, 400);
  const double r01 = e0 / e1;
  const double r12 = e1 / e2;
  detail = "L2 errors " + format_double(e0) + " / " + format_double(e1) + " / " +
           format_double(e2) + ", ratios " + format_double(r01) + ", " + format_double(r12);
  return r01 >= 3.0 && r01 <= 5.0 && r12 >= 3.0 && r12 <= 5.0;
}

// ---------------------------------------------------------------------------
// criterion 5: adjoint gradient vs central finite differences
// ---------------------------------------------------------------------------
bool gradient_check(std::string& detail) {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 2);
  const FemSystem fem = build_fem_system(mesh);
  ProblemConfig config;
  config.n_steps = 1000;  // tau = 1e-3
  const TimeGrid grid = config.time_grid();
  const int n_robin = static_cast<int>(fem.robin_nodes.size());
  const double eps = 1e-4;

  auto reduced_cost = [&](const ControlTrajectory& u) {
    const StateTrajectory y = solve_forward(mesh, fem, grid, config, u);
    return cost(y.level(grid.n_steps), u, fem, grid, config);
  };

  const ControlTrajectory base = ControlTrajectory::constant(grid, n_robin, 40.0);
  const StateTrajectory y = solve_forward(mesh, fem, grid, config, base);
  const StateTrajectory adj = solve_adjoint(mesh, fem, grid, config, y.level(grid.n_steps));
  const ControlTrajectory grad = reduced_gradient(adj, base, fem, config);

  Vector grad_full(static_cast<std::size_t>(mesh.n_vertices()), 0.0);
  Vector dir_full(grad_full.size(), 0.0);
  std::mt19937 rng(2024);
  // random heating perturbations; one-sided so the derivative does not
  // cancel to roundoff scale
  std::uniform_real_distribution<double> dist(0.0, 1.0);

  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ControlTrajectory dir(grid.n_levels(), n_robin);
    for (double& v : dir.values) v = dist(rng);
    std::fill(dir.level(0).begin(), dir.level(0).end(), 0.0);  // level 0 never enters a step

    ControlTrajectory up = base, down = base;
    for (std::size_t i = 0; i < dir.values.size(); ++i) {
      up.values[i] += eps * dir.values[i];
      down.values[i] -= eps * dir.values[i];
    }
    const double fd = (reduced_cost(up) - reduced_cost(down)) / (2.0 * eps);

    double pairing = 0.0;
    for (int m = 1; m <= grid.n_steps; ++m) {
      scatter(grad.level(m), fem.robin_nodes, grad_full);
      scatter(dir.level(m), fem.robin_nodes, dir_full);
      pairing += grid.tau() * dot(grad_full, spmv(fem.robin_mass, dir_full));
    }
    worst = std::max(worst, std::abs(fd - pairing) / std::abs(fd));
  }
  detail = "max relative error " + format_double(worst) + " over 5 directions";
  return worst <= 1e-2;
}

// ---------------------------------------------------------------------------
// criteria 6 and 7: reference-scale optimization grid and the energy trend
// ---------------------------------------------------------------------------
struct SweepOutcome {
  bool all_ok = true;
  std::string failures;
  std::map<double, double> energy_on_mid_grid;  // lambda -> control energy on (1,250)
  std::string iteration_table;
};

SweepOutcome run_reference_sweep() {
  SweepOutcome outcome;
  const std::vector<std::pair<int, int>> grids = {{0, 125}, {1, 250}, {2, 1000}};
  const std::vector<double> lambdas = {1e-4, 1e-2, 1.0, 1e2, 1e4};

  for (const auto& [level, n_steps] : grids) {
    const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, level);
    const FemSystem fem = build_fem_system(mesh);
    for (double lambda : lambdas) {
      ProblemConfig config;
      config.control_weight = lambda;
      config.n_steps = n_steps;
      const TimeGrid grid = config.time_grid();
      // any feasible start is admissible; the box midpoint leaves room for a
      // strict first descent on both ends of the lambda range
      const ControlTrajectory u0 = ControlTrajectory::constant(
          grid, static_cast<int>(fem.robin_nodes.size()), 40.0);

      bool feasible = true;
      ProjGradOptions opts;
      opts.on_iterate = [&](int, const ControlTrajectory& u, double, double) {
        for (double v : u.values)
          if (!(v >= config.control_lower && v <= config.control_upper)) feasible = false;
      };

      const OptimReport report = projected_gradient(mesh, fem, grid, config, u0, opts);

      char row[160];
      std::snprintf(row, sizeof row, "    level %d (%d nodes, %d steps), lambda %-8g: %2d "
                    "iterations, %s\n", level, mesh.n_vertices(), n_steps, lambda,
                    report.iterations, to_string(report.stop_reason));
      outcome.iteration_table += row;

      std::string cell_fail;
      if (report.iterations > config.max_iterations) cell_fail += " budget exceeded;";
      if (!feasible) cell_fail += " infeasible iterate;";
      if (!(report.cost_history.back() < report.cost_history.front()))
        cell_fail += " cost did not decrease;";
      if (!cell_fail.empty()) {
        outcome.all_ok = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, " [level %d, lambda %g:%s]", level, lambda,
                      cell_fail.c_str());
        outcome.failures += buf;
      }
      if (level == 1)
        outcome.energy_on_mid_grid[lambda] = control_energy(report.final_control, fem, grid);
    }
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// criterion 8: bang-bang formula on a synthetic adjoint
// ---------------------------------------------------------------------------
bool bang_bang_formula(std::string& detail) {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  const FemSystem fem = build_fem_system(mesh);
  ProblemConfig config;
  config.control_weight = 0.0;
  config.n_steps = 4;
  const TimeGrid grid = config.time_grid();

  StateTrajectory adj(grid.n_levels(), mesh.n_vertices());
  std::fill(adj.values.begin(), adj.values.end(), 123.0);  // junk off the heater arcs
  const int n_robin = static_cast<int>(fem.robin_nodes.size());
  for (int m = 0; m < adj.n_levels; ++m)
    for (int i = 0; i < n_robin; ++i) {
      const int phase = (m + i) % 3;
      adj.at(m, fem.robin_nodes[i]) = phase == 0 ? 3.5 : (phase == 1 ? -0.25 : 0.0);
    }

  const ControlTrajectory u = bang_bang_control(adj, fem, config);
  const double mid = 0.5 * (config.control_lower + config.control_upper);
  bool exact = true;
  for (int m = 0; m < u.n_levels; ++m)
    for (int i = 0; i < n_robin; ++i) {
      const int phase = (m + i) % 3;
      const double expect =
          phase == 0 ? config.control_lower : (phase == 1 ? config.control_upper : mid);
      if (u.at(m, i) != expect) exact = false;
    }
  detail = "sign pattern mapped onto {u_a, u_b, midpoint} over " + std::to_string(n_robin) +
           " heater nodes";
  return exact;
}

// ---------------------------------------------------------------------------
// criterion 9: determinism of the CSV logs and VTK self-parse
// ---------------------------------------------------------------------------
std::string read_all(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// the wall-seconds column is timing, not payload; strip it before comparing
std::string strip_last_column(const std::string& csv) {
  std::istringstream is(csv);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    const auto comma = line.rfind(',');
    os << (comma == std::string::npos ? line : line.substr(0, comma)) << '\n';
  }
  return os.str();
}

bool determinism_and_format(std::string& detail) {
  const fs::path scratch = fs::path("acceptance_scratch");
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const fs::path config_path = scratch / "run.cfg";
  {
    std::ofstream cfg(config_path);
    cfg << "mesh_level = 0\nn_steps = 125\n";
  }

  std::ostringstream log1, log2;
  OptimizeArgs args;
  args.config_file = config_path.string();
  args.out_dir = (scratch / "run1").string();
  if (cmd_optimize(args, log1) != 0) {
    detail = "first optimize run failed";
    return false;
  }
  args.out_dir = (scratch / "run2").string();
  if (cmd_optimize(args, log2) != 0) {
    detail = "second optimize run failed";
    return false;
  }

  bool ok = true;
  detail.clear();
  const std::string iter1 = strip_last_column(read_all(scratch / "run1" / "iterations.csv"));
  const std::string iter2 = strip_last_column(read_all(scratch / "run2" / "iterations.csv"));
  if (iter1 != iter2) {
    ok = false;
    detail += "iteration logs differ; ";
  }
  for (const char* name : {"final_control.csv", "final_state.vtk", "adjoint_t0.vtk"}) {
    if (read_all(scratch / "run1" / name) != read_all(scratch / "run2" / name)) {
      ok = false;
      detail += std::string(name) + " differs; ";
    }
  }

  // every VTK output must survive a self-parse round trip
  MeshArgs mesh_args;
  mesh_args.level = 0;
  mesh_args.out_dir = (scratch / "meshgen").string();
  std::ostringstream mesh_log;
  if (cmd_mesh(mesh_args, mesh_log) != 0) {
    detail += "mesh generation failed; ";
    return false;
  }
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  for (const fs::path path : {scratch / "run1" / "final_state.vtk",
                              scratch / "run1" / "adjoint_t0.vtk",
                              scratch / "meshgen" / "dome.vtk"}) {
    const VtkGrid grid = read_vtk_file(path.string());
    if (static_cast<int>(grid.points.size()) != mesh.n_vertices() ||
        static_cast<int>(grid.triangles.size()) != mesh.n_triangles() ||
        grid.point_fields.size() != 1) {
      ok = false;
      detail += path.filename().string() + " failed self-parse; ";
    }
  }
  if (ok) detail = "identical logs across reruns; VTK self-parse clean";
  fs::remove_all(scratch);
  return ok;
}

}  // namespace

int main() {
  run_criterion(1, "element oracles (mass, stiffness, edge mass)", element_oracles);
  run_criterion(2, "conservation and partition of unity", conservation_identities);
  run_criterion(3, "constant compatible state is a fixed point", fixed_point);
  run_criterion(4, "manufactured-solution convergence order", manufactured_convergence);
  run_criterion(5, "adjoint gradient vs finite differences", gradient_check);

  SweepOutcome sweep;
  run_criterion(6, "optimization grid: budget, feasibility, descent", [&](std::string& detail) {
    sweep = run_reference_sweep();
    std::fputs(sweep.iteration_table.c_str(), stdout);
    detail = sweep.all_ok ? "15/15 runs within budget, feasible, descending" : sweep.failures;
    return sweep.all_ok;
  });

  run_criterion(7, "control energy nonincreasing in lambda", [&](std::string& detail) {
    if (sweep.energy_on_mid_grid.size() != 5) {
      detail = "missing energies from criterion 6";
      return false;
    }
    bool ok = true;
    double prev = -1.0;
    std::string energies;
    // std::map iterates in increasing lambda
    for (const auto& [lambda, energy] : sweep.energy_on_mid_grid) {
      if (prev >= 0.0 && energy > prev * (1.0 + 1e-10)) ok = false;
      prev = energy;
      energies += format_double(energy) + " ";
    }
    detail = "energies over increasing lambda: " + energies;
    return ok;
  });

  run_criterion(8, "bang-bang control formula", bang_bang_formula);
  run_criterion(9, "determinism of logs and VTK round trip", determinism_and_format);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
