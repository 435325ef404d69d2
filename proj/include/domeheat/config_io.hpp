#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "domeheat/heat_solver.hpp"

namespace domeheat {

/// One or more problems with a configuration, reported together.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> issues);
  std::vector<std::string> issues;
};

/// A full run description: the problem scalars plus where the mesh comes
/// from (a file, or generated at the given level).
struct RunConfig {
  ProblemConfig problem;
  std::string mesh_file;  // empty: generate the half-disc below
  int mesh_level = 1;
  double mesh_radius = 1.0;
  double heater_angle = 0.2617993877991494;  // 15 degrees per heater side
};

/// Flat "key = value" text with '#' comments. Keys: g, alpha, beta, lambda,
/// T, n_steps, u_a, u_b, y_d, y_0, gamma, eps1, eps2, k_max, mesh_file,
/// mesh_level, radius, heater_angle. Unknown keys and invariant violations
/// are collected into one ConfigError.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Sweep description: "grid <level> <n_steps>" lines, optionally "lambda
/// <value>" lines for a cost-coefficient sweep over every grid.
struct SweepSpec {
  struct GridCase {
    int level = 0;
    int n_steps = 1;
  };
  std::vector<GridCase> grids;
  std::vector<double> lambdas;
};

SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

}  // namespace domeheat
