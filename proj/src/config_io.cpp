#include "domeheat/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace domeheat {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string msg = "invalid configuration:";
  for (const std::string& s : issues) msg += "\n  - " + s;
  return msg;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool parse_number(const std::string& text, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(text, &pos);
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_integer(const std::string& text, int& out) {
  try {
    std::size_t pos = 0;
    out = std::stoi(text, &pos);
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues_in)
    : std::runtime_error(join_issues(issues_in)), issues(std::move(issues_in)) {}

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  std::vector<std::string> issues;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    auto number = [&](double& field) {
      if (!parse_number(value, field))
        issues.push_back(key + ": invalid number '" + value + "'");
    };
    auto integer = [&](int& field) {
      if (!parse_integer(value, field))
        issues.push_back(key + ": invalid integer '" + value + "'");
    };

    if (key == "g") number(config.problem.pool_temperature);
    else if (key == "alpha") number(config.problem.robin_alpha);
    else if (key == "beta") number(config.problem.robin_beta);
    else if (key == "lambda") number(config.problem.control_weight);
    else if (key == "T") number(config.problem.final_time);
    else if (key == "n_steps") integer(config.problem.n_steps);
    else if (key == "u_a") number(config.problem.control_lower);
    else if (key == "u_b") number(config.problem.control_upper);
    else if (key == "y_d") number(config.problem.target_temperature);
    else if (key == "y_0") number(config.problem.initial_temperature);
    else if (key == "gamma") number(config.problem.step_length);
    else if (key == "eps1") number(config.problem.rel_change_tol);
    else if (key == "eps2") number(config.problem.stagnation_tol);
    else if (key == "k_max") integer(config.problem.max_iterations);
    else if (key == "mesh_file") config.mesh_file = value;
    else if (key == "mesh_level") integer(config.mesh_level);
    else if (key == "radius") number(config.mesh_radius);
    else if (key == "heater_angle") number(config.heater_angle);
    else issues.push_back(key + ": unknown key");
  }

  for (std::string& issue : config.problem.validate()) issues.push_back(std::move(issue));
  if (config.mesh_file.empty()) {
    if (config.mesh_level < 0) issues.push_back("mesh_level: must be >= 0");
    if (!(config.mesh_radius > 0.0)) issues.push_back("radius: must be > 0");
    if (!(config.heater_angle > 0.0 && config.heater_angle < std::numbers::pi / 2))
      issues.push_back("heater_angle: must lie in (0, pi/2)");
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return config;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

SweepSpec parse_sweep_spec(const std::string& text) {
  SweepSpec spec;
  std::vector<std::string> issues;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind)) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (kind == "grid") {
      SweepSpec::GridCase grid;
      if (!(ls >> grid.level >> grid.n_steps) || grid.level < 0 || grid.n_steps < 1)
        issues.push_back(where + ": expected 'grid <level >= 0> <n_steps >= 1>'");
      else
        spec.grids.push_back(grid);
    } else if (kind == "lambda") {
      double value = 0.0;
      if (!(ls >> value) || !(value >= 0.0))
        issues.push_back(where + ": expected 'lambda <value >= 0>'");
      else
        spec.lambdas.push_back(value);
    } else {
      issues.push_back(where + ": unknown directive '" + kind + "'");
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_file(path)); }

}  // namespace domeheat
