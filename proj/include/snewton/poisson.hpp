#pragma once

#include <span>
#include <vector>

#include "snewton/grid.hpp"
#include "snewton/state.hpp"

namespace snewton {

// Gravitational potential Phi on the grid plus the imaginary absorber profile
// W <= 0 (filled by the evolution layer; zero otherwise). The combined
// complex potential entering the flow is Phi + i*W.
struct PotentialField {
  RadialGrid grid;
  std::vector<double> phi;
  std::vector<double> absorber;
};

struct PoissonWorkspace {
  std::vector<double> shell_density;  // |u|^2 = r^2 |psi|^2
  std::vector<double> line_density;   // |u|^2 / r, zero at the origin
  std::vector<double> inner;          // cumulative from the origin
  std::vector<double> outer;          // cumulative from the outer boundary
  void resize(std::size_t n);
};

// Phi(r) = -4 pi G m [ r^{-1} Int_0^r r'^2|psi|^2 dr' + Int_r^R r'|psi|^2 dr' ]
// via two cumulative Newton-Cotes passes, O(n) per solve. The inner integrand
// is |u|^2 exactly, the outer |u|^2/r with its vanishing r = 0 limit; Phi(0)
// is the analytic limit -4 pi G m Int_0^R r'|psi|^2 dr'.
PotentialField compute_potential(const WaveState& state);
void compute_potential_into(std::span<const cdouble> u, const RadialGrid& grid, double mass,
                            PoissonWorkspace& ws, std::span<double> phi);

// Potential sourced by the initial Gaussian: -G m erf(r/sigma)/r, with the
// series limit -2 G m/(sqrt(pi) sigma) at the origin. Convergence oracle.
double analytic_gaussian_potential(double r, double mass, double sigma);

}  // namespace snewton
