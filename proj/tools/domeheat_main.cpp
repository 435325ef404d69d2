// Command-line front end: mesh generation, forward solves, optimization
// runs and parameter sweeps for the dome-heating control problem.

#include <iostream>

#include <CLI11.hpp>

#include "domeheat/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Boundary-control heating of the glass dome: finite element "
               "solver and projected-gradient optimizer"};
  app.require_subcommand(1);

  domeheat::MeshArgs mesh_args;
  CLI::App* mesh = app.add_subcommand("mesh", "generate the half-disc dome mesh");
  mesh->add_option("--radius", mesh_args.radius, "dome radius");
  mesh->add_option("--heater-angle", mesh_args.heater_angle,
                   "angular extent of each heater arc (radians)");
  mesh->add_option("--level", mesh_args.level, "refinement level (>= 0)");
  mesh->add_option("--out-dir", mesh_args.out_dir, "output directory");

  domeheat::SolveForwardArgs forward_args;
  CLI::App* forward = app.add_subcommand("solve-forward",
                                         "run the forward heat problem with a constant control");
  forward->add_option("--config", forward_args.config_file, "configuration file")->required();
  forward->add_option("--mesh", forward_args.mesh_file,
                      "mesh file base path (overrides the config)");
  forward->add_option("--out-dir", forward_args.out_dir, "output directory");
  forward->add_option("--snapshot-every", forward_args.snapshot_every,
                      "write a VTK snapshot every N time levels");
  forward->add_option("--control", forward_args.control_value,
                      "constant control value (default: the upper bound)");

  domeheat::OptimizeArgs optimize_args;
  CLI::App* optimize = app.add_subcommand("optimize", "run the projected gradient method");
  optimize->add_option("--config", optimize_args.config_file, "configuration file")->required();
  optimize->add_option("--mesh", optimize_args.mesh_file,
                       "mesh file base path (overrides the config)");
  optimize->add_option("--out-dir", optimize_args.out_dir, "output directory");
  optimize->add_option("--snapshot-every", optimize_args.snapshot_every,
                       "write VTK snapshots of the optimized trajectory every N levels");
  optimize->add_flag("--armijo", optimize_args.armijo, "backtracking line search");

  domeheat::SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "run a grid or cost-coefficient sweep");
  sweep->add_option("--config", sweep_args.config_file, "base configuration file")->required();
  sweep->add_option("--sweep", sweep_args.sweep_file, "sweep description file")->required();
  sweep->add_option("--out-dir", sweep_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems exit with 2
  }

  forward_args.has_control_value = forward->count("--control") > 0;

  try {
    if (*mesh) return domeheat::cmd_mesh(mesh_args, std::cout);
    if (*forward) return domeheat::cmd_solve_forward(forward_args, std::cout);
    if (*optimize) return domeheat::cmd_optimize(optimize_args, std::cout);
    if (*sweep) return domeheat::cmd_sweep(sweep_args, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
