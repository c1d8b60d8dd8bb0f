#pragma once

#include <complex>
#include <span>
#include <vector>

#include "snewton/grid.hpp"

namespace snewton {

using cdouble = std::complex<double>;

// The evolving unknown u = r*psi on a radial grid, plus particle mass and
// current time (all in code units). u_0 is identically zero.
struct WaveState {
  RadialGrid grid;
  std::vector<cdouble> u;
  double mass = 1.0;
  double t = 0.0;
};

// psi(r,0) = (pi sigma^2)^{-3/4} exp(-r^2/(2 sigma^2)), sampled analytically
// with no post-hoc renormalization. Requires outer_radius >= 8*sigma.
WaveState gaussian_initial(const RadialGrid& grid, double mass, double sigma);

// Similarity map of the self-gravitating flow: r -> lambda*r,
// t -> lambda^{5/3}*t, m -> lambda^{-1/3}*m, with psi rescaled by
// lambda^{-3/2} so total probability is preserved (u' = lambda^{-1/2} u).
struct ScaleTransform {
  double lambda = 1.0;
  WaveState apply(const WaveState& state) const;
};
WaveState apply_scale(const WaveState& state, double lambda);

// psi'(r) = mu^2 psi(mu*r) as a spatial map on a snapshot; the norm of the
// result is mu times the input norm. Off-grid samples use cubic interpolation;
// samples past the source grid require a tail below 1e-12 and become zero.
WaveState rescale_mu(const WaveState& state, double mu);

// Four-point Lagrange interpolation on a uniform grid. With odd_origin the
// samples are extended as an odd function below r = 0.
double interpolate_cubic(std::span<const double> y, double dr, double x, bool odd_origin);
cdouble interpolate_cubic(std::span<const cdouble> y, double dr, double x, bool odd_origin);

}  // namespace snewton
