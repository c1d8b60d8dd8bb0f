#include "snewton/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "snewton/errors.hpp"

namespace snewton {

WaveState gaussian_initial(const RadialGrid& grid, double mass, double sigma) {
  if (!(sigma > 0.0)) throw grid_error("gaussian_initial: sigma must be positive");
  if (!(mass > 0.0)) throw grid_error("gaussian_initial: mass must be positive");
  if (grid.outer_radius() < 8.0 * sigma)
    throw grid_error("gaussian_initial: domain too small, need outer_radius >= 8*sigma");

  WaveState state;
  state.grid = grid;
  state.mass = mass;
  state.t = 0.0;
  state.u.resize(grid.n_points);
  const double amplitude = std::pow(std::numbers::pi * sigma * sigma, -0.75);
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double r = grid.r(j);
    state.u[j] = cdouble(r * amplitude * std::exp(-r * r * inv_two_sigma2), 0.0);
  }
  state.u[0] = cdouble(0.0, 0.0);
  return state;
}

WaveState ScaleTransform::apply(const WaveState& state) const {
  return apply_scale(state, lambda);
}

WaveState apply_scale(const WaveState& state, double lambda) {
  if (!(lambda > 0.0)) throw grid_error("apply_scale: lambda must be positive");
  WaveState scaled;
  scaled.grid = RadialGrid(state.grid.dr * lambda, state.grid.n_points);
  scaled.mass = state.mass * std::pow(lambda, -1.0 / 3.0);
  scaled.t = state.t * std::pow(lambda, 5.0 / 3.0);
  scaled.u.resize(state.u.size());
  const double factor = 1.0 / std::sqrt(lambda);  // u'(lambda r) = lambda^{-1/2} u(r)
  for (std::size_t j = 0; j < state.u.size(); ++j) scaled.u[j] = factor * state.u[j];
  return scaled;
}

namespace {

// Shared window/weight logic; Sample(i) maps a (possibly negative) index to a value.
template <typename T, typename Sample>
T cubic_at(const Sample& sample, std::ptrdiff_t n, double dr, double x, bool odd_origin) {
  const double s = x / dr;
  std::ptrdiff_t base = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
  const std::ptrdiff_t lo = odd_origin ? -1 : 0;
  base = std::clamp(base, lo, n - 4);
  const double tau = s - static_cast<double>(base);
  const double w0 = -(tau - 1.0) * (tau - 2.0) * (tau - 3.0) / 6.0;
  const double w1 = tau * (tau - 2.0) * (tau - 3.0) / 2.0;
  const double w2 = -tau * (tau - 1.0) * (tau - 3.0) / 2.0;
  const double w3 = tau * (tau - 1.0) * (tau - 2.0) / 6.0;
  return w0 * sample(base) + w1 * sample(base + 1) + w2 * sample(base + 2) +
         w3 * sample(base + 3);
}

}  // namespace

double interpolate_cubic(std::span<const double> y, double dr, double x, bool odd_origin) {
  if (y.size() < 4) throw insufficient_points_error("interpolate_cubic: need at least 4 samples");
  auto sample = [&](std::ptrdiff_t i) -> double { return i < 0 ? -y[-i] : y[i]; };
  return cubic_at<double>(sample, static_cast<std::ptrdiff_t>(y.size()), dr, x, odd_origin);
}

cdouble interpolate_cubic(std::span<const cdouble> y, double dr, double x, bool odd_origin) {
  if (y.size() < 4) throw insufficient_points_error("interpolate_cubic: need at least 4 samples");
  auto sample = [&](std::ptrdiff_t i) -> cdouble { return i < 0 ? -y[-i] : y[i]; };
  return cubic_at<cdouble>(sample, static_cast<std::ptrdiff_t>(y.size()), dr, x, odd_origin);
}

WaveState rescale_mu(const WaveState& state, double mu) {
  if (!(mu > 0.0)) throw grid_error("rescale_mu: mu must be positive");
  const double outer = state.grid.outer_radius();
  if (mu > 1.0) {
    // Sampling psi(mu*r) reaches past the source grid; only admissible when
    // the tail there is negligible.
    double tail = 0.0;
    const std::size_t n = state.u.size();
    for (std::size_t j = n - std::min<std::size_t>(n, 4); j < n; ++j)
      tail = std::max(tail, std::abs(state.u[j]));
    if (tail > 1e-12)
      throw extrapolation_error("rescale_mu: mu*r exceeds the grid and the tail is not negligible");
  }
  WaveState out;
  out.grid = state.grid;
  out.mass = state.mass;
  out.t = state.t;
  out.u.resize(state.u.size());
  out.u[0] = cdouble(0.0, 0.0);
  for (std::size_t j = 1; j < state.u.size(); ++j) {
    const double x = mu * state.grid.r(j);
    out.u[j] = x <= outer ? mu * interpolate_cubic(std::span<const cdouble>(state.u),
                                                   state.grid.dr, x, true)
                          : cdouble(0.0, 0.0);
  }
  return out;
}

}  // namespace snewton
