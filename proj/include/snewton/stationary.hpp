#pragma once

#include <vector>

#include "snewton/grid.hpp"
#include "snewton/poisson.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Nodeless stationary profile and eigenvalue of the self-gravitating system,
// normalized to unit probability on the solver's internal grid.
struct StationaryState {
  RadialGrid grid;
  std::vector<double> u0;    // r*psi0, real
  std::vector<double> v;     // r*Phi
  double phi_origin = 0.0;   // limit of v/r at the origin
  double energy = 0.0;       // eigenvalue, negative for bound states
  int node_count = 0;
  double mass = 1.0;
};

// Pointwise right-hand sides of the stationary system
//   u'' = 2 m (m v/r - E) u,   v'' = 4 pi G m u^2 / r,
// with the regular series limits (both vanish) at r = 0.
struct StationaryRhs {
  double u_second = 0.0;
  double v_second = 0.0;
};
StationaryRhs stationary_rhs(double r, double u, double v, double energy, double mass);

// Shooting construction of the groundstate: series start at the origin in the
// gauge w(0) = m*Phi(0) - E = -1, bisection on the central slope u'(0) until
// the solution decays with zero nodes, then rescaling to unit norm (which
// fixes E through the mu-scaling law, energy factor mu^2 per unit of norm).
// The grid must resolve the expected width 1/m^3 with at least 200 points.
StationaryState solve_groundstate(double mass, const RadialGrid& grid);

// Groundstate as an evolvable state (u complex, t = 0).
WaveState to_wave_state(const StationaryState& gs);

// Phi samples of the stationary solution, v/r with the origin limit.
PotentialField potential_of(const StationaryState& gs);

// p^2 psi0(p r): norm p, Hamiltonian expectation p^3 E.
WaveState fractional_groundstate(const StationaryState& gs, double p);

}  // namespace snewton
