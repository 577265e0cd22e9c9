#include "nucorr/pmns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nucorr/units.hpp"

namespace nucorr {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

void require_angle(double value, const char* name) {
  if (!std::isfinite(value)) throw std::invalid_argument(std::string(name) + " is not finite");
  if (value < 0.0 || value > half_pi)
    throw std::invalid_argument(std::string(name) + " outside [0, pi/2]");
}

}  // namespace

MixingAngles MixingAngles::from_sin_squared(double s2_12, double s2_13, double s2_23) {
  for (double v : {s2_12, s2_13, s2_23}) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("sin^2(theta) must lie in [0, 1]");
  }
  return {std::asin(std::sqrt(s2_12)), std::asin(std::sqrt(s2_13)), std::asin(std::sqrt(s2_23))};
}

PmnsMatrix build_pmns(const MixingAngles& angles, double delta_cp) {
  require_angle(angles.theta12, "theta12");
  require_angle(angles.theta13, "theta13");
  require_angle(angles.theta23, "theta23");
  if (!std::isfinite(delta_cp)) throw std::invalid_argument("delta_cp is not finite");

  const double c12 = std::cos(angles.theta12), s12 = std::sin(angles.theta12);
  const double c13 = std::cos(angles.theta13), s13 = std::sin(angles.theta13);
  const double c23 = std::cos(angles.theta23), s23 = std::sin(angles.theta23);

  // Entries are kept exactly real when the phase vanishes.
  const Complex eid = delta_cp == 0.0 ? Complex{1.0, 0.0}
                                      : std::exp(Complex{0.0, delta_cp});
  const Complex eidc = std::conj(eid);

  PmnsMatrix m;
  m.u[0][0] = c12 * c13;
  m.u[0][1] = s12 * c13;
  m.u[0][2] = s13 * eidc;
  m.u[1][0] = -s12 * c23 - c12 * s13 * s23 * eid;
  m.u[1][1] = c12 * c23 - s12 * s13 * s23 * eid;
  m.u[1][2] = s23 * c13;
  m.u[2][0] = s12 * s23 - c12 * s13 * c23 * eid;
  m.u[2][1] = -c12 * s23 - c23 * s12 * s13 * eid;
  m.u[2][2] = c13 * c23;
  return m;
}

double unitarity_deviation(const PmnsMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Complex s{};
      for (int k = 0; k < 3; ++k) s += m.u[i][k] * std::conj(m.u[j][k]);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

}  // namespace nucorr
