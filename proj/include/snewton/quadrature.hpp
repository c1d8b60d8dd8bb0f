#pragma once

#include <span>
#include <vector>

namespace snewton {

enum class CumulativeDirection { FromOrigin, FromOuter };

// Cumulative integral F_j of f over a uniform grid with spacing dr,
// accumulated from the chosen end. Composite Simpson panels cover the bulk;
// odd remainders use the closed 3/8 rule and the very first interval a
// one-sided four-point panel, so no segment falls below 4th order.
// Exact for polynomials through degree 3. Requires at least 5 samples.
std::vector<double> newton_cotes_cumulative(std::span<const double> f, double dr,
                                            CumulativeDirection direction);
void newton_cotes_cumulative_into(std::span<const double> f, double dr,
                                  CumulativeDirection direction, std::span<double> out);

// Integral over the whole grid; equals the far end of the cumulative pass.
double newton_cotes_integrate(std::span<const double> f, double dr);

}  // namespace snewton
