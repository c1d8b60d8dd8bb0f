#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace snewton {

// Raised for malformed command lines / config files; maps to exit code 1.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when --help was requested; carries the help text.
struct help_requested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double mass = 0.0;  // required for the single-run commands
  double sigma = 1.0;
  double dr = 1.0 / 64;
  std::size_t n_points = 2049;
  double dt_factor = 0.1;
  double absorber_amplitude = 1.0;
  double absorber_width = 1.0;
  double absorber_steepness = 0.25;
  double t_end = 10.0;
  double snapshot_interval = 0.1;
  std::string output_dir = "out";
  double horizon = 20.0;
  std::vector<double> mass_list;          // sweep
  std::vector<double> bracket = {1.0, 1.5};  // bisect
  double tol = 0.05;
  int jobs = 1;
};

// Flags (and an optional `key = value` config file via --config, flags taking
// precedence, unknown keys rejected) to an effective RunConfig.
// args excludes the program name.
RunConfig parse_config(const std::vector<std::string>& args);

// Executes one command; throws on numerical failure.
void run_command(const RunConfig& config);

// Full front end: exit code 0 on success, 1 on usage errors, 2 on numerical
// failure.
int run_cli(int argc, char** argv);

}  // namespace snewton
