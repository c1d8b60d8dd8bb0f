#include "snewton/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "snewton/errors.hpp"
#include "snewton/evolve.hpp"
#include "snewton/quadrature.hpp"

namespace snewton {

namespace {

std::vector<double> abs_squared(const WaveState& state) {
  std::vector<double> f(state.u.size());
  for (std::size_t j = 0; j < state.u.size(); ++j) {
    const double re = state.u[j].real();
    const double im = state.u[j].imag();
    f[j] = re * re + im * im;
  }
  return f;
}

}  // namespace

double total_probability(const WaveState& state, double r_max) {
  const double outer = state.grid.outer_radius();
  if (!(r_max > 0.0) || r_max > outer * (1.0 + 1e-12))
    throw grid_error("total_probability: r_max outside (0, R]");
  const auto f = abs_squared(state);
  const auto cumulative =
      newton_cotes_cumulative(f, state.grid.dr, CumulativeDirection::FromOrigin);
  auto k = static_cast<std::size_t>(std::llround(r_max / state.grid.dr));
  k = std::min(k, state.grid.n_points - 1);
  return 4.0 * std::numbers::pi * cumulative[k];
}

double total_probability(const WaveState& state) {
  const auto f = abs_squared(state);
  return 4.0 * std::numbers::pi * newton_cotes_integrate(f, state.grid.dr);
}

double hamiltonian_expectation(const WaveState& state, const PotentialField& field,
                               double* imag_residual) {
  if (field.grid != state.grid)
    throw grid_error("hamiltonian_expectation: potential grid mismatch");
  const auto d2u = second_derivative(state.u, state.grid);
  const std::size_t n = state.u.size();
  std::vector<double> re(n), im(n);
  const double half_over_m = 0.5 / state.mass;  // hbar = 1
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble kinetic = -half_over_m * std::conj(state.u[j]) * d2u[j];
    const double density = std::norm(state.u[j]);
    re[j] = kinetic.real() + state.mass * field.phi[j] * density;
    im[j] = kinetic.imag();
  }
  const double four_pi = 4.0 * std::numbers::pi;
  const double value = four_pi * newton_cotes_integrate(re, state.grid.dr);
  const double residual = four_pi * newton_cotes_integrate(im, state.grid.dr);
  if (imag_residual) *imag_residual = residual;
  const double scale = std::max(std::abs(value), 1e-300);
  if (std::abs(residual) / scale > 1e-3) {
    std::fprintf(stderr,
                 "snewton: hamiltonian_expectation imaginary residual %.3e "
                 "exceeds 1e-3 of |<H>| = %.3e\n",
                 residual, value);
  }
  return value;
}

double sn_energy(const WaveState& state, const PotentialField& field) {
  if (field.grid != state.grid) throw grid_error("sn_energy: potential grid mismatch");
  const auto d2u = second_derivative(state.u, state.grid);
  const std::size_t n = state.u.size();
  std::vector<double> integrand(n);
  const double half_over_m = 0.5 / state.mass;
  for (std::size_t j = 0; j < n; ++j) {
    const double kinetic = -half_over_m * (std::conj(state.u[j]) * d2u[j]).real();
    integrand[j] = kinetic + 0.5 * state.mass * field.phi[j] * std::norm(state.u[j]);
  }
  return 4.0 * std::numbers::pi * newton_cotes_integrate(integrand, state.grid.dr);
}

Peak find_peak(const WaveState& state) {
  const auto f = abs_squared(state);
  const std::size_t k =
      static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  if (k == 0 || k + 1 == f.size())
    throw no_peak_error("find_peak: argmax of |u|^2 lies on a boundary");
  const double ym = f[k - 1], y0 = f[k], yp = f[k + 1];
  const double curvature = ym - 2.0 * y0 + yp;
  if (!(curvature < 0.0)) return {state.grid.r(k), y0};  // flat triple
  const double shift = 0.5 * state.grid.dr * (ym - yp) / curvature;
  const double value = y0 - (ym - yp) * (ym - yp) / (8.0 * curvature);
  return {state.grid.r(k) + shift, value};
}

double mass_within(const WaveState& state, double r) {
  return state.mass * total_probability(state, r);
}

double escape_velocity(const WaveState& state) {
  const Peak peak = find_peak(state);
  const double enclosed = mass_within(state, peak.r);
  return std::sqrt(2.0 * enclosed / peak.r);  // G = 1
}

std::vector<double> peak_velocity(std::span<const double> t, std::span<const double> r_peak) {
  const std::size_t n = t.size();
  if (n != r_peak.size()) throw insufficient_points_error("peak_velocity: length mismatch");
  if (n < 3) throw insufficient_points_error("peak_velocity: need at least 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1]))
      throw insufficient_points_error("peak_velocity: times must be strictly increasing");

  // Derivative of the local quadratic through three samples; exact on
  // quadratics, also for uneven spacing.
  auto quadratic_slope = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    const double ta = t[a], tb = t[b], tc = t[c];
    return r_peak[a] * (2.0 * at - tb - tc) / ((ta - tb) * (ta - tc)) +
           r_peak[b] * (2.0 * at - ta - tc) / ((tb - ta) * (tb - tc)) +
           r_peak[c] * (2.0 * at - ta - tb) / ((tc - ta) * (tc - tb));
  };

  std::vector<double> v(n);
  v[0] = quadratic_slope(0, 1, 2, t[0]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = (r_peak[i + 1] - r_peak[i - 1]) / (t[i + 1] - t[i - 1]);
  v[n - 1] = quadratic_slope(n - 3, n - 2, n - 1, t[n - 1]);
  return v;
}

DiagnosticsRecord diagnose(const WaveState& state, const PotentialField& field) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.norm = total_probability(state);
  rec.energy_expectation = hamiltonian_expectation(state, field);
  rec.sn_energy = sn_energy(state, field);
  try {
    const Peak peak = find_peak(state);
    rec.r_peak = peak.r;
    rec.peak_value = peak.value;
    rec.m_enclosed = mass_within(state, peak.r);
    rec.v_escape = std::sqrt(2.0 * rec.m_enclosed / peak.r);
  } catch (const no_peak_error&) {
    // Dispersed or fully out-flowed state: peak observables stay NaN.
  }
  return rec;
}

}  // namespace snewton
