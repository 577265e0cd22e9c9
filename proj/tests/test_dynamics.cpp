#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nucorr/dynamics.hpp"
#include "nucorr/units.hpp"

using namespace nucorr;

namespace {

OscillationParams benchmark_params() {
  OscillationParams p;
  p.angles = MixingAngles::from_sin_squared(0.314, 0.008, 0.45);
  p.delta_cp = 0.0;
  p.small_splitting = 7.92e-5;
  p.large_splitting = 2.6e-3;
  p.energy = units::gev_to_ev(10.0);
  p.zeta = 0.2;
  return p;
}

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("mass splittings table") {
  OscillationParams p = benchmark_params();

  SUBCASE("zero inputs give a zero table") {
    p.small_splitting = 0.0;
    p.large_splitting = 0.0;
    const MassSplittings s = mass_splittings(p);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) CHECK(s(a, b) == 0.0);
  }

  SUBCASE("benchmark values") {
    const MassSplittings s = mass_splittings(p);
    CHECK(s(2, 1) == doctest::Approx(7.92e-5).epsilon(1e-15));
    CHECK(s(3, 1) == doctest::Approx(2.6396e-3).epsilon(1e-15));
    CHECK(s(3, 2) == doctest::Approx(2.5604e-3).epsilon(1e-15));
  }

  SUBCASE("antisymmetry and telescoping") {
    const MassSplittings s = mass_splittings(p);
    for (int a = 1; a <= 3; ++a) {
      CHECK(s(a, a) == 0.0);
      for (int b = 1; b <= 3; ++b) CHECK(s(a, b) == -s(b, a));
    }
    CHECK(s(1, 2) + s(2, 3) - s(1, 3) == doctest::Approx(0.0).epsilon(1e-18));
  }
}

TEST_CASE("plane-wave amplitudes") {
  const OscillationParams p = benchmark_params();
  const PmnsMatrix u = build_pmns(p.angles, p.delta_cp);
  const MassSplittings s = mass_splittings(p);

  SUBCASE("zero baseline collapses to the initial flavor") {
    for (Flavor alpha : all_flavors) {
      const FlavorAmplitudes a = plane_wave_amplitudes(u, s, p.energy, 0.0, alpha);
      for (Flavor beta : all_flavors) {
        const double expected = alpha == beta ? 1.0 : 0.0;
        CHECK(std::abs(a[beta] - expected) < 1e-12);
      }
    }
  }

  SUBCASE("degenerate masses never oscillate") {
    OscillationParams deg = p;
    deg.small_splitting = 0.0;
    deg.large_splitting = 0.0;
    const MassSplittings s0 = mass_splittings(deg);
    const double baseline = units::km_to_natural(5000.0);
    const FlavorAmplitudes a = plane_wave_amplitudes(u, s0, p.energy, baseline, Flavor::mu);
    CHECK(std::abs(a.a_mu - 1.0) < 1e-12);
    CHECK(std::abs(a.a_e) < 1e-12);
    CHECK(std::abs(a.a_tau) < 1e-12);
  }

  SUBCASE("amplitudes stay normalized along the baseline") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> km(0.0, 5e5);
    for (int i = 0; i < 200; ++i) {
      const FlavorAmplitudes a =
          plane_wave_amplitudes(u, s, p.energy, units::km_to_natural(km(rng)), Flavor::e);
      CHECK(a.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("squared amplitudes equal the undamped time-integrated form") {
    const WavePacketConfig packet = WavePacketConfig::effective(units::meters_to_natural(1e-7));
    const double half_osc = 0.5 * oscillation_length(p.energy, s(3, 1));
    for (double baseline : {half_osc, 0.1 * half_osc, 3.7 * half_osc}) {
      const FlavorAmplitudes a = plane_wave_amplitudes(u, s, p.energy, baseline, Flavor::e);
      for (Flavor beta : all_flavors) {
        const double undamped = wave_packet_probability(u, p, packet, baseline, Flavor::e,
                                                        beta, DampingMode::none);
        CHECK(std::abs(std::norm(a[beta]) - undamped) < 1e-12);
      }
    }
  }
}

TEST_CASE("oscillation length") {
  const double energy = units::gev_to_ev(10.0);
  SUBCASE("benchmark values in km") {
    // hand conversion: 4 pi E / dm2 in eV^-1, then hbar*c to meters
    const double l31_km = units::natural_to_km(oscillation_length(energy, 2.6396e-3));
    const double oracle31 = 4.0 * pi * 1e10 / 2.6396e-3 * 1.973269804e-7 / 1e3;
    CHECK(l31_km == doctest::Approx(oracle31).epsilon(1e-12));
    CHECK(l31_km == doctest::Approx(9.39e3).epsilon(1e-2));

    const double l12_km = units::natural_to_km(oscillation_length(energy, 7.92e-5));
    CHECK(l12_km == doctest::Approx(3.13e5).epsilon(1e-2));
  }
  SUBCASE("linear in energy") {
    CHECK(oscillation_length(2.0 * energy, 2.6e-3) ==
          doctest::Approx(2.0 * oscillation_length(energy, 2.6e-3)).epsilon(1e-15));
  }
  SUBCASE("degenerate pair is an error") {
    CHECK_THROWS_AS(oscillation_length(energy, 0.0), std::domain_error);
  }
}

TEST_CASE("coherence length scalings") {
  const double energy = units::gev_to_ev(10.0);
  const WavePacketConfig one = WavePacketConfig::effective(1.0);
  const WavePacketConfig two = WavePacketConfig::effective(2.0);
  CHECK(coherence_length(two, energy, 2.6e-3) ==
        doctest::Approx(2.0 * coherence_length(one, energy, 2.6e-3)).epsilon(1e-15));
  CHECK(coherence_length(one, 2.0 * energy, 2.6e-3) ==
        doctest::Approx(4.0 * coherence_length(one, energy, 2.6e-3)).epsilon(1e-15));
  CHECK_THROWS_AS(coherence_length(one, energy, 0.0), std::domain_error);
}

TEST_CASE("localization factor") {
  const double energy = units::gev_to_ev(10.0);
  SUBCASE("vanishing width gives no suppression") {
    const WavePacketConfig tiny = WavePacketConfig::effective(1e-30);
    CHECK(localization_factor(tiny, energy, 2.6e-3, 0.2) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("degenerate pair gives exactly 1") {
    const WavePacketConfig wide = WavePacketConfig::effective(1e20);
    CHECK(localization_factor(wide, energy, 0.0, 0.2) == 1.0);
  }
  SUBCASE("width equal to the oscillation length") {
    const double l_osc = oscillation_length(energy, 2.6e-3);
    const WavePacketConfig c = WavePacketConfig::effective(l_osc);
    const double expected = std::exp(-2.0 * pi * pi * 0.8 * 0.8);
    CHECK(localization_factor(c, energy, 2.6e-3, 0.2) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(3.3e-6).epsilon(0.02));
  }
}

TEST_CASE("time-integrated probability") {
  const OscillationParams p = benchmark_params();
  const PmnsMatrix u = build_pmns(p.angles, p.delta_cp);
  const WavePacketConfig packet = WavePacketConfig::effective(units::meters_to_natural(2e-17));

  SUBCASE("zero baseline and narrow packet give the initial flavor") {
    for (Flavor alpha : all_flavors)
      for (Flavor beta : all_flavors) {
        const double prob = wave_packet_probability(u, p, packet, 0.0, alpha, beta);
        CHECK(std::abs(prob - (alpha == beta ? 1.0 : 0.0)) < 1e-12);
      }
  }

  SUBCASE("fully decohered limit equals the incoherent sum of moduli") {
    // recomputed from the electron-row moduli: sum_a |U_ea|^4
    double expected = 0.0;
    for (int a = 0; a < 3; ++a) expected += std::norm(u.u[0][a]) * std::norm(u.u[0][a]);
    const MassSplittings s = mass_splittings(p);
    const double far = 100.0 * coherence_length(packet, p.energy, s(2, 1));
    CHECK(wave_packet_probability(u, p, packet, far, Flavor::e, Flavor::e) ==
          doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(0.5602).epsilon(1e-4));
  }

  SUBCASE("rows sum to one for any baseline and width") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> km(0.0, 1e6);
    std::uniform_real_distribution<double> logw(-18.0, -15.0);
    for (int i = 0; i < 200; ++i) {
      const WavePacketConfig c =
          WavePacketConfig::effective(units::meters_to_natural(std::pow(10.0, logw(rng))));
      const ProbabilityRow row =
          wave_packet_probabilities(u, p, c, units::km_to_natural(km(rng)), Flavor::mu);
      CHECK(row.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(row.p_e >= -1e-12);
      CHECK(row.p_mu >= -1e-12);
      CHECK(row.p_tau >= -1e-12);
    }
  }

  SUBCASE("vanishing CP phase makes transitions symmetric") {
    const double baseline = units::km_to_natural(4321.0);
    for (Flavor a : all_flavors)
      for (Flavor b : all_flavors) {
        const double pab = wave_packet_probability(u, p, packet, baseline, a, b);
        const double pba = wave_packet_probability(u, p, packet, baseline, b, a);
        CHECK(pab == doctest::Approx(pba).epsilon(1e-12));
      }
  }

  SUBCASE("cross-term damping grows monotonically with width at fixed baseline") {
    const MassSplittings s = mass_splittings(p);
    // short enough that the narrowest width does not underflow exp
    const double baseline = 0.5 * oscillation_length(p.energy, s(3, 1));
    double previous = -1.0;
    for (double w : {1e-18, 3e-18, 1e-17, 3e-17, 1e-16}) {
      const WavePacketConfig c = WavePacketConfig::effective(units::meters_to_natural(w));
      const double damp =
          std::exp(-std::pow(baseline / coherence_length(c, p.energy, s(3, 1)), 2));
      CHECK(damp > previous);
      previous = damp;
    }
  }
}

TEST_CASE("space-time wave-packet amplitude") {
  OscillationParams p = benchmark_params();
  const PmnsMatrix u = build_pmns(p.angles, p.delta_cp);
  const double sigma = units::meters_to_natural(1e-12);
  const WavePacketConfig split =
      WavePacketConfig::split(sigma / std::numbers::sqrt2, sigma / std::numbers::sqrt2);

  SUBCASE("effective-width-only config is rejected") {
    const WavePacketConfig effective = WavePacketConfig::effective(sigma);
    CHECK_THROWS_AS(
        wave_packet_amplitude(u, p, effective, 1.0, 1.0, Flavor::e, Flavor::e),
        std::invalid_argument);
  }

  SUBCASE("degenerate masses on the light cone give the Gaussian prefactor") {
    OscillationParams deg = p;
    deg.small_splitting = 0.0;
    deg.large_splitting = 0.0;
    const double baseline = units::km_to_natural(1.0);
    const double prefactor = std::sqrt(2.0 * (*split.sigma_x_production) *
                                       (*split.sigma_x_detection) /
                                       (split.sigma_x * split.sigma_x));
    for (Flavor beta : all_flavors) {
      const Complex a = wave_packet_amplitude(u, deg, split, baseline, baseline,
                                              Flavor::mu, beta);
      const double expected = beta == Flavor::mu ? prefactor : 0.0;
      CHECK(std::abs(a) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  SUBCASE("the envelope dies away from the light cone") {
    const double baseline = units::km_to_natural(1.0);
    const Complex a = wave_packet_amplitude(u, p, split, baseline, baseline + 50.0 * sigma,
                                            Flavor::e, Flavor::e);
    CHECK(std::abs(a) < 1e-200);
  }
}

TEST_CASE("time integration agrees with the closed-form probabilities") {
  const OscillationParams p = benchmark_params();
  const PmnsMatrix u = build_pmns(p.angles, p.delta_cp);
  const double sigma = units::meters_to_natural(4e-16);
  const WavePacketConfig split =
      WavePacketConfig::split(sigma / std::numbers::sqrt2, sigma / std::numbers::sqrt2);
  const MassSplittings s = mass_splittings(p);

  SUBCASE("degenerate masses match trivially") {
    OscillationParams deg = p;
    deg.small_splitting = 0.0;
    deg.large_splitting = 0.0;
    const QuadratureResult r =
        time_integration_check(u, deg, split, units::km_to_natural(100.0), Flavor::e);
    CHECK(r.max_deviation < 1e-9);
  }

  SUBCASE("oscillating regime matches to a part in a thousand") {
    const double l_osc = oscillation_length(p.energy, s(3, 1));
    const double l_coh = coherence_length(split, p.energy, s(3, 1));
    for (double baseline : {0.1 * l_osc, 0.1 * l_coh, 0.25 * l_coh}) {
      const QuadratureResult r = time_integration_check(u, p, split, baseline, Flavor::e);
      CHECK(r.max_deviation < 1e-3);
    }
  }
}
