#include "snewton/poisson.hpp"

#include <cmath>
#include <numbers>

#include "snewton/errors.hpp"
#include "snewton/quadrature.hpp"

namespace snewton {

void PoissonWorkspace::resize(std::size_t n) {
  shell_density.resize(n);
  line_density.resize(n);
  inner.resize(n);
  outer.resize(n);
}

void compute_potential_into(std::span<const cdouble> u, const RadialGrid& grid, double mass,
                            PoissonWorkspace& ws, std::span<double> phi) {
  const std::size_t n = grid.n_points;
  if (u.size() != n || phi.size() != n)
    throw grid_error("compute_potential: field size does not match the grid");
  ws.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    const double re = u[j].real();
    const double im = u[j].imag();
    ws.shell_density[j] = re * re + im * im;
  }
  ws.line_density[0] = 0.0;
  const double inv_dr = 1.0 / grid.dr;
  for (std::size_t j = 1; j < n; ++j)
    ws.line_density[j] = ws.shell_density[j] * inv_dr / static_cast<double>(j);

  newton_cotes_cumulative_into(ws.shell_density, grid.dr, CumulativeDirection::FromOrigin,
                               ws.inner);
  newton_cotes_cumulative_into(ws.line_density, grid.dr, CumulativeDirection::FromOuter,
                               ws.outer);

  const double prefactor = -4.0 * std::numbers::pi * mass;  // G = 1
  phi[0] = prefactor * ws.outer[0];
  for (std::size_t j = 1; j < n; ++j)
    phi[j] = prefactor * (ws.inner[j] / grid.r(j) + ws.outer[j]);
}

PotentialField compute_potential(const WaveState& state) {
  PotentialField field;
  field.grid = state.grid;
  field.phi.resize(state.grid.n_points);
  field.absorber.assign(state.grid.n_points, 0.0);
  PoissonWorkspace ws;
  compute_potential_into(state.u, state.grid, state.mass, ws, field.phi);
  return field;
}

double analytic_gaussian_potential(double r, double mass, double sigma) {
  if (!(sigma > 0.0)) throw grid_error("analytic_gaussian_potential: sigma must be positive");
  const double x = r / sigma;
  if (x < 1e-6) {
    // erf(x)/x = (2/sqrt(pi)) (1 - x^2/3 + x^4/10 - ...)
    const double x2 = x * x;
    return -mass / sigma * 2.0 / std::sqrt(std::numbers::pi) *
           (1.0 - x2 / 3.0 + x2 * x2 / 10.0);
  }
  return -mass * std::erf(x) / r;
}

}  // namespace snewton
