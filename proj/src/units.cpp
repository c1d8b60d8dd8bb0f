#include "snewton/units.hpp"

#include <cmath>
#include <stdexcept>

namespace snewton {

CodeUnits::CodeUnits(double sigma_si) : sigma_si_(sigma_si) {
  if (!(sigma_si > 0.0)) throw std::invalid_argument("CodeUnits: sigma_si must be positive");
  time_unit_si_ = std::cbrt(std::pow(sigma_si, 5) / (kGravitationalConstantSi * kHBarSi));
  mass_unit_si_ = std::cbrt(kHBarSi * kHBarSi / (kGravitationalConstantSi * sigma_si));
  energy_unit_si_ = kHBarSi / time_unit_si_;
}

}  // namespace snewton
