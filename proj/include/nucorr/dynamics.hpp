#pragma once

#include <complex>
#include <optional>

#include "nucorr/pmns.hpp"

namespace nucorr {

/// Physical inputs for a three-flavor oscillation computation.
/// Energies and mass splittings in eV / eV^2.
struct OscillationParams {
  MixingAngles angles;
  double delta_cp = 0.0;        // radians
  double small_splitting = 0.0; // delta m^2, eV^2 (solar)
  double large_splitting = 0.0; // Delta m^2, eV^2 (atmospheric)
  double energy = 0.0;          // eV
  double zeta = 0.2;            // pion-decay energy sharing parameter

  void validate() const;  // throws std::invalid_argument
};

/// Antisymmetric table of squared-mass differences,
/// dm2(a, b) = m_a^2 - m_b^2 in eV^2 with mass indices a, b in {1,2,3}.
struct MassSplittings {
  std::array<std::array<double, 3>, 3> dm2{};

  double operator()(int a, int b) const { return dm2[a - 1][b - 1]; }
};

/// Gaussian wave-packet widths in natural units (eV^-1).
/// The effective width always satisfies
/// sigma_x^2 = sigma_x_production^2 + sigma_x_detection^2.
struct WavePacketConfig {
  double sigma_x = 0.0;
  std::optional<double> sigma_x_production;
  std::optional<double> sigma_x_detection;

  /// Effective width only; production/detection split unspecified.
  static WavePacketConfig effective(double sigma_x);
  /// Both component widths given; effective width derived.
  static WavePacketConfig split(double sigma_xp, double sigma_xd);

  bool has_split() const { return sigma_x_production && sigma_x_detection; }
};

/// Complex transition amplitudes (A_alpha_e, A_alpha_mu, A_alpha_tau)
/// for a fixed initial flavor alpha.
struct FlavorAmplitudes {
  Complex a_e{};
  Complex a_mu{};
  Complex a_tau{};

  Complex operator[](Flavor f) const {
    switch (f) {
      case Flavor::e: return a_e;
      case Flavor::mu: return a_mu;
      default: return a_tau;
    }
  }
  double norm_squared() const;
};

/// Transition probabilities out of a fixed initial flavor.
struct ProbabilityRow {
  double p_e = 0.0;
  double p_mu = 0.0;
  double p_tau = 0.0;

  double operator[](Flavor f) const {
    switch (f) {
      case Flavor::e: return p_e;
      case Flavor::mu: return p_mu;
      default: return p_tau;
    }
  }
  double sum() const { return p_e + p_mu + p_tau; }
};

/// Whether the Gaussian separation damping and the localization factor
/// are applied in the time-integrated probability. Disabling both
/// reduces the expression to the plane-wave result.
enum class DampingMode { full, none };

/// Expands (small_splitting, large_splitting) into the full antisymmetric
/// table: dm2(2,1) = delta m^2, dm2(3,1) = Delta m^2 + delta m^2 / 2,
/// dm2(3,2) = Delta m^2 - delta m^2 / 2.
MassSplittings mass_splittings(const OscillationParams& params);

/// Plane-wave evolution over a baseline (natural units, eV^-1).
/// Phases are taken relative to mass state 1.
FlavorAmplitudes plane_wave_amplitudes(const PmnsMatrix& u, const MassSplittings& splittings,
                                       double energy, double baseline, Flavor alpha);

ProbabilityRow plane_wave_probabilities(const PmnsMatrix& u, const MassSplittings& splittings,
                                        double energy, double baseline, Flavor alpha);

/// 4 pi E / |dm2_ab|, in eV^-1. Throws std::domain_error for a degenerate pair.
double oscillation_length(double energy, double dm2_ab);

/// 4 sqrt(2) sigma_x E^2 / |dm2_ab|, in eV^-1. Throws std::domain_error for a
/// degenerate pair.
double coherence_length(const WavePacketConfig& config, double energy, double dm2_ab);

/// exp[-2 pi^2 (1 - zeta)^2 (sigma_x / L_osc)^2]; exactly 1 for a degenerate
/// pair (infinite oscillation length).
double localization_factor(const WavePacketConfig& config, double energy, double dm2_ab,
                           double zeta);

/// Time-integrated transition probability with wave-packet decoherence and
/// localization damping. Baseline in natural units.
double wave_packet_probability(const PmnsMatrix& u, const OscillationParams& params,
                               const WavePacketConfig& config, double baseline, Flavor alpha,
                               Flavor beta, DampingMode damping = DampingMode::full);

ProbabilityRow wave_packet_probabilities(const PmnsMatrix& u, const OscillationParams& params,
                                         const WavePacketConfig& config, double baseline,
                                         Flavor alpha, DampingMode damping = DampingMode::full);

/// Space-time wave-packet amplitude at baseline L and time T (both eV^-1),
/// with phases measured relative to the massless reference e^{-iE(T-L)}.
/// Requires both production and detection widths; throws std::invalid_argument
/// when only the effective width is configured.
Complex wave_packet_amplitude(const PmnsMatrix& u, const OscillationParams& params,
                              const WavePacketConfig& config, double baseline, double time,
                              Flavor alpha, Flavor beta);

struct QuadratureResult {
  double max_deviation = 0.0;   // worst |normalized quadrature - normalized closed form|
  double error_estimate = 0.0;  // worst relative quadrature error estimate
};

/// Integrates |A_alpha_beta(L, T)|^2 over T for each final flavor, normalizes
/// the triple to unit sum and compares against the closed-form probability row
/// normalized the same way. Throws std::runtime_error when the quadrature
/// fails to converge.
QuadratureResult time_integration_check(const PmnsMatrix& u, const OscillationParams& params,
                                        const WavePacketConfig& config, double baseline,
                                        Flavor alpha);

}  // namespace nucorr
