#include "snewton/quadrature.hpp"

#include "snewton/errors.hpp"

namespace snewton {

namespace {

void cumulative_from_origin(std::span<const double> f, double dr, std::span<double> out) {
  const std::size_t n = f.size();
  out[0] = 0.0;
  // First interval: four-point one-sided panel (exact on cubics).
  out[1] = dr * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
  for (std::size_t j = 2; j < n; ++j) {
    if (j % 2 == 0) {
      out[j] = out[j - 2] + dr * (f[j - 2] + 4.0 * f[j - 1] + f[j]) / 3.0;
    } else {
      out[j] = out[j - 3] +
               dr * 0.375 * (f[j - 3] + 3.0 * f[j - 2] + 3.0 * f[j - 1] + f[j]);
    }
  }
}

void cumulative_from_outer(std::span<const double> f, double dr, std::span<double> out) {
  const std::size_t n = f.size();
  out[n - 1] = 0.0;
  out[n - 2] = dr * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0;
  for (std::size_t k = 2; k < n; ++k) {
    const std::size_t j = n - 1 - k;
    if (k % 2 == 0) {
      out[j] = out[j + 2] + dr * (f[j + 2] + 4.0 * f[j + 1] + f[j]) / 3.0;
    } else {
      out[j] = out[j + 3] +
               dr * 0.375 * (f[j + 3] + 3.0 * f[j + 2] + 3.0 * f[j + 1] + f[j]);
    }
  }
}

}  // namespace

void newton_cotes_cumulative_into(std::span<const double> f, double dr,
                                  CumulativeDirection direction, std::span<double> out) {
  if (f.size() < 5)
    throw insufficient_points_error("newton_cotes_cumulative: need at least 5 samples");
  if (out.size() != f.size())
    throw insufficient_points_error("newton_cotes_cumulative: output size mismatch");
  if (direction == CumulativeDirection::FromOrigin) {
    cumulative_from_origin(f, dr, out);
  } else {
    cumulative_from_outer(f, dr, out);
  }
}

std::vector<double> newton_cotes_cumulative(std::span<const double> f, double dr,
                                            CumulativeDirection direction) {
  std::vector<double> out(f.size());
  newton_cotes_cumulative_into(f, dr, direction, out);
  return out;
}

double newton_cotes_integrate(std::span<const double> f, double dr) {
  const std::size_t n = f.size();
  if (n < 5) throw insufficient_points_error("newton_cotes_integrate: need at least 5 samples");
  const std::size_t intervals = n - 1;
  // Simpson pairs from the origin; a trailing odd remainder takes the 3/8 rule
  // over the last three intervals (same panelization as the cumulative pass).
  const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  double total = 0.0;
  for (std::size_t j = 2; j <= simpson_end; j += 2) {
    total += dr * (f[j - 2] + 4.0 * f[j - 1] + f[j]) / 3.0;
  }
  if (intervals % 2 != 0) {
    const std::size_t j = n - 1;
    total += dr * 0.375 * (f[j - 3] + 3.0 * f[j - 2] + 3.0 * f[j - 1] + f[j]);
  }
  return total;
}

}  // namespace snewton
