#include "domeheat/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "domeheat/config_io.hpp"
#include "domeheat/csv_io.hpp"
#include "domeheat/mesh_io.hpp"
#include "domeheat/optimizer.hpp"
#include "domeheat/vtk_io.hpp"

namespace domeheat {

namespace {

namespace fs = std::filesystem;

std::string joined(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

TriMesh resolve_mesh(const RunConfig& config, const std::string& mesh_override,
                     std::ostream& log) {
  if (!mesh_override.empty()) {
    log << "mesh: " << mesh_override << "\n";
    return read_triangle_mesh_files(mesh_override);
  }
  if (!config.mesh_file.empty()) {
    log << "mesh: " << config.mesh_file << "\n";
    return read_triangle_mesh_files(config.mesh_file);
  }
  log << "mesh: generated half-disc, level " << config.mesh_level << "\n";
  return generate_half_disc(config.mesh_radius, config.heater_angle, config.mesh_level);
}

/// Per-node boundary class for VTK previews; the pool tag wins at corners,
/// matching the Dirichlet convention.
Vector boundary_tag_field(const TriMesh& mesh) {
  Vector field(static_cast<std::size_t>(mesh.n_vertices()), 0.0);
  auto apply = [&](BoundaryTag tag) {
    for (int v : boundary_nodes(mesh, {tag})) field[v] = static_cast<double>(tag);
  };
  apply(BoundaryTag::Glass);
  apply(BoundaryTag::HeaterRight);
  apply(BoundaryTag::HeaterLeft);
  apply(BoundaryTag::Pool);
  return field;
}

int config_failure(const ConfigError& e, std::ostream& log) {
  log << "configuration error:\n";
  for (const std::string& issue : e.issues) log << "  - " << issue << "\n";
  return 2;
}

struct LoadedRun {
  RunConfig config;
  TriMesh mesh;
  FemSystem fem;
};

LoadedRun load_run(const std::string& config_file, const std::string& mesh_override,
                   std::ostream& log) {
  LoadedRun run;
  run.config = load_run_config(config_file);
  run.mesh = resolve_mesh(run.config, mesh_override, log);
  validate(run.mesh);
  run.fem = build_fem_system(run.mesh);
  log << "nodes " << run.mesh.n_vertices() << ", triangles " << run.mesh.n_triangles()
      << ", dof " << run.fem.dof_nodes.size() << ", heater nodes " << run.fem.robin_nodes.size()
      << "\n";
  return run;
}

void write_state_vtk(const std::string& path, const TriMesh& mesh, const std::string& title,
                     const std::string& field_name, const Vector& field) {
  const std::pair<std::string, const Vector*> fields[] = {{field_name, &field}};
  write_vtk_file(path, mesh, title, fields);
}

}  // namespace

int cmd_mesh(const MeshArgs& args, std::ostream& log) {
  TriMesh mesh;
  try {
    mesh = generate_half_disc(args.radius, args.heater_angle, args.level);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  fs::create_directories(args.out_dir);
  const std::string base = joined(args.out_dir, "dome");
  write_triangle_mesh_files(mesh, base);

  const Vector tags = boundary_tag_field(mesh);
  write_state_vtk(base + ".vtk", mesh, "half-disc dome mesh", "boundary_tag", tags);

  std::map<BoundaryTag, int> edge_counts;
  for (const BoundaryEdge& e : mesh.boundary_edges) ++edge_counts[e.tag];
  log << "nodes " << mesh.n_vertices() << "\n";
  log << "triangles " << mesh.n_triangles() << "\n";
  log << "boundary edges " << mesh.boundary_edges.size();
  for (const auto& [tag, count] : edge_counts)
    log << " (" << to_string(tag) << " " << count << ")";
  log << "\n";
  log << "wrote " << base << ".node/.ele/.bnd and " << base << ".vtk\n";
  return 0;
}

int cmd_solve_forward(const SolveForwardArgs& args, std::ostream& log) {
  LoadedRun run;
  try {
    run = load_run(args.config_file, args.mesh_file, log);
  } catch (const ConfigError& e) {
    return config_failure(e, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }

  const ProblemConfig& problem = run.config.problem;
  const TimeGrid grid = problem.time_grid();
  const double value = args.has_control_value ? args.control_value : problem.control_upper;
  const ControlTrajectory control =
      ControlTrajectory::constant(grid, static_cast<int>(run.fem.robin_nodes.size()), value);
  log << "constant control " << value << ", " << grid.n_steps << " steps to T=" << grid.final_time
      << "\n";

  fs::create_directories(args.out_dir);
  std::ofstream trajectory = open_output(joined(args.out_dir, "trajectory.csv"));
  write_trajectory_header(trajectory);

  Vector final_state;
  ForwardOptions opts;
  opts.on_level = [&](int level, std::span<const double> state) {
    write_trajectory_level(trajectory, level, state);
    if (args.snapshot_every > 0 &&
        (level % args.snapshot_every == 0 || level == grid.n_steps)) {
      char name[64];
      std::snprintf(name, sizeof name, "state_%06d.vtk", level);
      const Vector field(state.begin(), state.end());
      write_state_vtk(joined(args.out_dir, name), run.mesh, "temperature snapshot",
                      "temperature", field);
    }
    if (level == grid.n_steps) final_state.assign(state.begin(), state.end());
  };

  try {
    solve_forward(run.mesh, run.fem, grid, problem, control, opts);
  } catch (const SolverFailure& e) {
    log << "solver failure: " << e.what() << "\n";
    return 1;
  }

  write_state_vtk(joined(args.out_dir, "final_state.vtk"), run.mesh, "temperature at final time",
                  "temperature", final_state);
  log << "wrote trajectory.csv and final_state.vtk\n";
  return 0;
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& log) {
  LoadedRun run;
  try {
    run = load_run(args.config_file, args.mesh_file, log);
  } catch (const ConfigError& e) {
    return config_failure(e, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }

  const ProblemConfig& problem = run.config.problem;
  const TimeGrid grid = problem.time_grid();
  const ControlTrajectory u0 = ControlTrajectory::constant(
      grid, static_cast<int>(run.fem.robin_nodes.size()), problem.control_lower);

  ProjGradOptions opts;
  opts.use_armijo = args.armijo;
  opts.on_iterate = [&log](int k, const ControlTrajectory&, double cost_value, double error) {
    log << "k=" << k << " J=" << format_double(cost_value);
    if (k > 0) log << " e=" << format_double(error);
    log << "\n";
  };

  OptimReport report;
  StateTrajectory adjoint;
  try {
    report = projected_gradient(run.mesh, run.fem, grid, problem, u0, opts);
    adjoint = solve_adjoint(run.mesh, run.fem, grid, problem,
                            report.final_state.level(grid.n_steps));
  } catch (const SolverFailure& e) {
    log << "solver failure: " << e.what() << "\n";
    return 1;
  }

  fs::create_directories(args.out_dir);
  {
    std::ofstream out = open_output(joined(args.out_dir, "iterations.csv"));
    write_iteration_log(out, report);
  }
  {
    std::ofstream out = open_output(joined(args.out_dir, "final_control.csv"));
    write_control_csv(out, report.final_control, run.fem.robin_nodes);
  }
  {
    const Vector field(report.final_state.level(grid.n_steps).begin(),
                       report.final_state.level(grid.n_steps).end());
    write_state_vtk(joined(args.out_dir, "final_state.vtk"), run.mesh,
                    "optimized temperature at final time", "temperature", field);
  }
  {
    const Vector field(adjoint.level(0).begin(), adjoint.level(0).end());
    write_state_vtk(joined(args.out_dir, "adjoint_t0.vtk"), run.mesh,
                    "adjoint state at initial time", "adjoint", field);
  }
  if (args.snapshot_every > 0) {
    for (int m = 0; m < report.final_state.n_levels; ++m) {
      if (m % args.snapshot_every != 0 && m != grid.n_steps) continue;
      char name[64];
      std::snprintf(name, sizeof name, "state_%06d.vtk", m);
      const Vector field(report.final_state.level(m).begin(),
                         report.final_state.level(m).end());
      write_state_vtk(joined(args.out_dir, name), run.mesh, "temperature snapshot",
                      "temperature", field);
    }
  }

  log << "stop_reason=" << to_string(report.stop_reason) << " iterations=" << report.iterations
      << " final_cost=" << format_double(report.cost_history.back()) << "\n";
  if (report.armijo_warnings > 0)
    log << "warning: " << report.armijo_warnings << " line searches found no decrease\n";
  log << "wrote iterations.csv, final_control.csv, final_state.vtk, adjoint_t0.vtk\n";
  return 0;
}

int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  RunConfig base;
  SweepSpec spec;
  try {
    base = load_run_config(args.config_file);
    spec = load_sweep_spec(args.sweep_file);
  } catch (const ConfigError& e) {
    return config_failure(e, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(args.out_dir);
  std::ofstream out = open_output(joined(args.out_dir, "summary.csv"));

  struct CellResult {
    bool ok = false;
    int iterations = 0;
    std::string stop_reason;
    double final_cost = 0.0;
    std::string error;
  };

  auto run_cell = [&](int level, int n_steps, double lambda) {
    CellResult cell;
    try {
      ProblemConfig problem = base.problem;
      problem.n_steps = n_steps;
      problem.control_weight = lambda;
      const TriMesh mesh = generate_half_disc(base.mesh_radius, base.heater_angle, level);
      const FemSystem fem = build_fem_system(mesh);
      const TimeGrid grid = problem.time_grid();
      const ControlTrajectory u0 = ControlTrajectory::constant(
          grid, static_cast<int>(fem.robin_nodes.size()), problem.control_lower);
      const OptimReport report = projected_gradient(mesh, fem, grid, problem, u0);
      cell.ok = true;
      cell.iterations = report.iterations;
      cell.stop_reason = to_string(report.stop_reason);
      cell.final_cost = report.cost_history.back();
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    return cell;
  };

  auto mesh_nodes = [&](int level) {
    return generate_half_disc(base.mesh_radius, base.heater_angle, level).n_vertices();
  };

  if (spec.lambdas.empty()) {
    // mesh-refinement table at the configured cost coefficient
    out << "mesh_nodes,time_steps,iterations,stop_reason,final_cost,status\n";
    for (const auto& grid_case : spec.grids) {
      log << "grid level " << grid_case.level << ", " << grid_case.n_steps << " steps\n";
      const CellResult cell =
          run_cell(grid_case.level, grid_case.n_steps, base.problem.control_weight);
      out << mesh_nodes(grid_case.level) << ',' << grid_case.n_steps << ',';
      if (cell.ok)
        out << cell.iterations << ',' << cell.stop_reason << ','
            << format_double(cell.final_cost) << ",ok\n";
      else
        out << ",,," << "error: " << cell.error << "\n";
    }
  } else {
    // cost-coefficient table, one iteration column per grid
    out << "lambda";
    for (const auto& grid_case : spec.grids)
      out << ",iters_" << mesh_nodes(grid_case.level) << '_' << grid_case.n_steps;
    out << "\n";
    for (double lambda : spec.lambdas) {
      out << format_double(lambda);
      for (const auto& grid_case : spec.grids) {
        log << "lambda " << lambda << ", grid level " << grid_case.level << ", "
            << grid_case.n_steps << " steps\n";
        const CellResult cell = run_cell(grid_case.level, grid_case.n_steps, lambda);
        if (cell.ok)
          out << ',' << cell.iterations;
        else
          out << ",error: " << cell.error;
      }
      out << "\n";
    }
  }
  log << "wrote summary.csv\n";
  return 0;
}

}  // namespace domeheat
