#pragma once

#include <stdexcept>
#include <string>

namespace snewton {

// Grid construction/compatibility problems (spacing, size, mismatched fields).
struct grid_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An operation was handed fewer samples than its stencil/rule needs.
struct insufficient_points_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Off-grid sampling would extrapolate past a non-negligible tail.
struct extrapolation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite samples appeared during time integration.
struct instability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A shooting/bisection bracket could not be established or was invalid.
struct bracketing_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested accuracy cannot be met at the given resolution.
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No interior maximum of r^2|psi|^2 exists (dispersed or out-flowed state).
struct no_peak_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The tracked peak left the trustworthy part of the computational domain.
struct domain_exceeded_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fate classification stayed Undecided after all retries.
struct inconclusive_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace snewton
