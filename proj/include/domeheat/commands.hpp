#pragma once

#include <iosfwd>
#include <string>

namespace domeheat {

// Subcommand implementations shared by the CLI front end and the tests.
// Each returns a process exit code: 0 success, 1 solver failure, 2 bad
// input (flags, config, mesh files).

struct MeshArgs {
  double radius = 1.0;
  double heater_angle = 0.2617993877991494;  // 15 degrees
  int level = 1;
  std::string out_dir = ".";
};

struct SolveForwardArgs {
  std::string config_file;
  std::string mesh_file;  // overrides the config when set
  std::string out_dir = ".";
  int snapshot_every = 0;  // VTK snapshot cadence in time levels, 0 = off
  bool has_control_value = false;
  double control_value = 0.0;  // constant control; defaults to u_b
};

struct OptimizeArgs {
  std::string config_file;
  std::string mesh_file;
  std::string out_dir = ".";
  int snapshot_every = 0;
  bool armijo = false;
};

struct SweepArgs {
  std::string config_file;
  std::string sweep_file;
  std::string out_dir = ".";
};

int cmd_mesh(const MeshArgs& args, std::ostream& log);
int cmd_solve_forward(const SolveForwardArgs& args, std::ostream& log);
int cmd_optimize(const OptimizeArgs& args, std::ostream& log);
int cmd_sweep(const SweepArgs& args, std::ostream& log);

}  // namespace domeheat
