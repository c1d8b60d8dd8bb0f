#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "snewton/diagnostics.hpp"
#include "snewton/poisson.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Largest magnitude of the 7-point stencil symbol (at the grid Nyquist mode).
inline constexpr double kStencilSymbolMax = 272.0 / 45.0;
// Extent of the classical RK4 stability region along the imaginary axis.
inline constexpr double kRk4ImaginaryStabilityLimit = 2.8;

struct EvolutionParams {
  double dt_factor = 0.1;           // alpha in dt = alpha*(2m/hbar)*dr^2
  double absorber_amplitude = 1.0;  // A >= 0; zero disables the layer
  double absorber_width = 1.0;      // w
  double absorber_steepness = 0.25; // s
  double t_end = 10.0;
  double snapshot_interval = 0.1;
  bool self_gravity = true;

  double time_step(const RadialGrid& grid, double mass) const {
    return dt_factor * 2.0 * mass * grid.dr * grid.dr;  // hbar = 1
  }
  // Enforces dt*lambda_max = dt_factor*c6 within the RK4 imaginary-axis
  // stability interval, plus basic positivity and absorber geometry.
  void validate(const RadialGrid& grid) const;
};

// d^2u/dr^2 with the 6th-order 7-point central stencil. Points within three
// of the origin use the odd extension u_{-j} = -u_j; points within three of
// the outer boundary use the even (Neumann) extension u_{n-1+j} = u_{n-1-j}.
std::vector<cdouble> second_derivative(std::span<const cdouble> u, const RadialGrid& grid);
void second_derivative_into(std::span<const cdouble> u, const RadialGrid& grid,
                            std::span<cdouble> out);

// W(r) = -(A/2) [1 + tanh((r - (R - w))/s)]; order A within ~w of the outer
// boundary, negligible elsewhere.
std::vector<double> absorber_profile(const RadialGrid& grid, const EvolutionParams& params);

// du/dt = i (hbar/2m) d^2u/dr^2 - i (m/hbar) (Phi + iW) u, with the origin
// sample pinned to zero.
std::vector<cdouble> rhs(const WaveState& state, const PotentialField& field,
                         std::span<const double> absorber);

// One classical RK4 step of size dt = alpha*(2m/hbar)*dr^2; the potential is
// recomputed from the intermediate wave function at every stage.
WaveState rk4_step(const WaveState& state, const EvolutionParams& params);

using Observer = std::function<void(const DiagnosticsRecord&, const WaveState&)>;

struct EvolutionResult {
  WaveState state;
  std::vector<DiagnosticsRecord> trajectory;
  bool cancelled = false;
  std::size_t steps = 0;
};

// Steps until t >= t_end, recording diagnostics every snapshot_interval (and
// at both endpoints); the final step is shortened to land on t_end exactly.
// The observer, when given, sees each record as it is produced; v_peak in the
// returned trajectory is filled from the completed peak-radius series.
// A set cancellation flag stops the run early with the partial trajectory.
EvolutionResult evolve(const WaveState& initial, const EvolutionParams& params,
                       const Observer& observer = {},
                       const std::atomic<bool>* cancel = nullptr);

}  // namespace snewton
