#pragma once

#include <limits>
#include <span>
#include <vector>

#include "snewton/poisson.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Per-snapshot observables. v_peak is filled from the snapshot series (it
// needs neighbors); fields that require an interior peak are NaN when the
// state has none.
struct DiagnosticsRecord {
  double t = 0.0;
  double norm = 0.0;
  double energy_expectation = 0.0;
  double sn_energy = 0.0;
  double r_peak = std::numeric_limits<double>::quiet_NaN();
  double peak_value = std::numeric_limits<double>::quiet_NaN();
  double v_peak = std::numeric_limits<double>::quiet_NaN();
  double v_escape = std::numeric_limits<double>::quiet_NaN();
  double m_enclosed = std::numeric_limits<double>::quiet_NaN();
};

// 4 pi Int_0^{r_max} |u|^2 dr, evaluated at the nearest grid radius.
double total_probability(const WaveState& state, double r_max);
// In-domain norm (r_max = R).
double total_probability(const WaveState& state);

// <H> = Int [ -(hbar^2/2m) psi* Lap psi + m Phi |psi|^2 ] dV in u-form, with
// the full m*Phi weight. The real part is returned; the imaginary part is a
// consistency residual, reported through imag_residual when requested and
// warned about past 1e-3 relative.
double hamiltonian_expectation(const WaveState& state, const PotentialField& field,
                               double* imag_residual = nullptr);

// Conserved functional of the flow: same kinetic term but (1/2) m Phi |psi|^2.
double sn_energy(const WaveState& state, const PotentialField& field);

struct Peak {
  double r = 0.0;
  double value = 0.0;
};

// Discrete argmax of |u|^2 refined by a quadratic fit through the argmax and
// its two neighbors. Throws no_peak_error when the argmax sits on a boundary.
Peak find_peak(const WaveState& state);

// m times the probability within radius r.
double mass_within(const WaveState& state, double r);

// sqrt(2 G m_enclosed(r_peak) / r_peak).
double escape_velocity(const WaveState& state);

// Finite-difference velocity of a peak-radius series: centered in the
// interior, one-sided (second order) at the ends. Needs >= 3 samples.
std::vector<double> peak_velocity(std::span<const double> t, std::span<const double> r_peak);

// All snapshot observables in one record (v_peak left NaN).
DiagnosticsRecord diagnose(const WaveState& state, const PotentialField& field);

}  // namespace snewton
