#pragma once

#include <array>
#include <complex>

#include "nucorr/flavor.hpp"

namespace nucorr {

using Complex = std::complex<double>;
using Matrix3c = std::array<std::array<Complex, 3>, 3>;

/// Mixing angles in radians, first-quadrant convention.
struct MixingAngles {
  double theta12 = 0.0;
  double theta13 = 0.0;
  double theta23 = 0.0;

  /// Builds angles from sin^2(theta) values (the form experiments quote),
  /// taking the positive square root and the first-quadrant arcsin branch.
  static MixingAngles from_sin_squared(double s2_12, double s2_13, double s2_23);
};

/// 3x3 unitary mixing matrix. Rows are flavors (e, mu, tau),
/// columns are mass states (1, 2, 3).
struct PmnsMatrix {
  Matrix3c u{};

  Complex operator()(Flavor alpha, int mass_index) const {
    return u[index_of(alpha)][mass_index];
  }
};

/// Standard-parameterization mixing matrix from three angles and the
/// Dirac CP phase. Throws std::invalid_argument on non-finite or
/// out-of-range inputs.
PmnsMatrix build_pmns(const MixingAngles& angles, double delta_cp);

/// max |(U U^dagger - I)_ij|
double unitarity_deviation(const PmnsMatrix& m);

}  // namespace nucorr
