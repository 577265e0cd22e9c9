#pragma once

#include <array>
#include <complex>

#include "nucorr/dynamics.hpp"

namespace nucorr {

/// 3x3 density matrix in the flavor basis (e, mu, tau).
struct FlavorDensityMatrix {
  std::array<std::array<Complex, 3>, 3> rho{};
};

/// Single-particle state over three flavor occupation modes,
/// basis |n_e n_mu n_tau>, index = 4 n_e + 2 n_mu + n_tau.
struct ThreeModeState {
  std::array<Complex, 8> psi{};
};

/// Two-qubit density matrix over |00>, |01>, |10>, |11>.
struct TwoQubitDensityMatrix {
  std::array<std::array<Complex, 4>, 4> rho{};
};

struct CorrelationReport {
  double l1_norm = 0.0;
  double concurrence_emu = 0.0;
  double concurrence_etau = 0.0;
  double concurrence_mutau = 0.0;
  double identity_residual = 0.0;

  double concurrence_sum() const {
    return concurrence_emu + concurrence_etau + concurrence_mutau;
  }
};

/// rho_bg = A_b A_g^*. Rejects amplitudes whose norm deviates from 1 by
/// more than 1e-9 (std::invalid_argument).
FlavorDensityMatrix density_from_amplitudes(const FlavorAmplitudes& a);

/// Sum of |rho_ij| over the six off-diagonal entries; in [0, 2] for states.
double l1_norm(const FlavorDensityMatrix& rho);

/// 2(sqrt(P_e P_mu) + sqrt(P_e P_tau) + sqrt(P_mu P_tau)). Probabilities in
/// [-1e-12, 0) are clipped to 0 before the square roots.
double coherence_from_probabilities(const ProbabilityRow& p);

/// Encodes amplitudes as the one-excitation state
/// a_e |100> + a_mu |010> + a_tau |001>.
ThreeModeState three_mode_state(const FlavorAmplitudes& a);

/// Reduced density matrix over the two modes that remain after tracing out
/// traced_mode. The remaining flavors keep (e, mu, tau) order: the lower
/// index becomes the first qubit.
TwoQubitDensityMatrix partial_trace(const ThreeModeState& psi, Flavor traced_mode);

/// Concurrence via the spin-flipped product rho * rho_tilde,
/// rho_tilde = (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
/// Throws std::runtime_error when the spectrum of the product is not
/// real and non-negative to tolerance.
double wootters_concurrence(const TwoQubitDensityMatrix& rho);

/// Pure-state closed form 2 |a00 a11 - a01 a10|.
double pure_concurrence(Complex a00, Complex a01, Complex a10, Complex a11);

/// Flavor-mode closed form 2 sqrt(P_beta P_gamma); tiny negative inputs
/// are clipped to 0.
double flavor_concurrence(double p_beta, double p_gamma);

/// l1-norm, the three pairwise concurrences and the residual of the
/// coherence = sum-of-concurrences identity, all from one probability row.
CorrelationReport correlation_report(const ProbabilityRow& p);

}  // namespace nucorr
