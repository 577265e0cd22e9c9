#include "nucorr/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nucorr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double four_sqrt2 = 5.656854249492380195;  // 4 * sqrt(2)

// m_a^2 for a = 1, 2, 3 with the massless reference m_1^2 = 0.
std::array<double, 3> masses_squared(const MassSplittings& s) {
  return {0.0, s(2, 1), s(3, 1)};
}

// Wave-packet summand at offset tau = T - L, common factor e^{-iE tau}
// dropped. Working in the offset keeps L - v_a T resolvable at long
// baselines where T and L individually dwarf their difference.
Complex amplitude_at_offset(const PmnsMatrix& u, const OscillationParams& params,
                            const WavePacketConfig& config,
                            const std::array<double, 3>& m2, double baseline, double tau,
                            Flavor alpha, Flavor beta) {
  const double e = params.energy;
  const double prefactor = std::sqrt(2.0 * (*config.sigma_x_production) *
                                     (*config.sigma_x_detection) /
                                     (config.sigma_x * config.sigma_x));
  Complex sum{};
  for (int a = 0; a < 3; ++a) {
    const double phase = -params.zeta * m2[a] * tau / (2.0 * e) - m2[a] * baseline / (2.0 * e);
    // L - v_a T with v_a = 1 - m_a^2 / (2 E^2) and T = L + tau
    const double separation = -tau + m2[a] * (baseline + tau) / (2.0 * e * e);
    const double envelope =
        separation * separation / (4.0 * config.sigma_x * config.sigma_x);
    if (envelope > 700.0) continue;  // exp underflows anyway
    sum += std::conj(u(alpha, a)) * u(beta, a) *
           std::exp(Complex{-envelope, phase});
  }
  return prefactor * sum;
}

}  // namespace

void OscillationParams::validate() const {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw std::invalid_argument("energy must be positive and finite");
  if (!std::isfinite(small_splitting) || !std::isfinite(large_splitting))
    throw std::invalid_argument("mass splittings must be finite");
  if (!(zeta >= 0.0 && zeta < 1.0))
    throw std::invalid_argument("zeta must lie in [0, 1)");
  if (!std::isfinite(delta_cp))
    throw std::invalid_argument("delta_cp must be finite");
}

WavePacketConfig WavePacketConfig::effective(double sigma_x) {
  if (!(sigma_x > 0.0) || !std::isfinite(sigma_x))
    throw std::invalid_argument("sigma_x must be positive and finite");
  WavePacketConfig c;
  c.sigma_x = sigma_x;
  return c;
}

WavePacketConfig WavePacketConfig::split(double sigma_xp, double sigma_xd) {
  if (!(sigma_xp > 0.0) || !(sigma_xd > 0.0))
    throw std::invalid_argument("production/detection widths must be positive");
  WavePacketConfig c;
  c.sigma_x_production = sigma_xp;
  c.sigma_x_detection = sigma_xd;
  c.sigma_x = std::sqrt(sigma_xp * sigma_xp + sigma_xd * sigma_xd);
  return c;
}

double FlavorAmplitudes::norm_squared() const {
  return std::norm(a_e) + std::norm(a_mu) + std::norm(a_tau);
}

MassSplittings mass_splittings(const OscillationParams& params) {
  params.validate();
  const double small = params.small_splitting;
  const double large = params.large_splitting;
  MassSplittings s{};
  auto set = [&](int a, int b, double v) {
    s.dm2[a - 1][b - 1] = v;
    s.dm2[b - 1][a - 1] = -v;
  };
  // dm2(2,1) carries the solar splitting so the three entries telescope:
  // dm2(3,1) - dm2(3,2) = dm2(2,1).
  set(2, 1, small);
  set(3, 1, large + small / 2.0);
  set(3, 2, large - small / 2.0);
  return s;
}

FlavorAmplitudes plane_wave_amplitudes(const PmnsMatrix& u, const MassSplittings& splittings,
                                       double energy, double baseline, Flavor alpha) {
  if (!(energy > 0.0)) throw std::invalid_argument("energy must be positive");
  if (baseline < 0.0) throw std::invalid_argument("baseline must be non-negative");
  const auto m2 = masses_squared(splittings);
  FlavorAmplitudes out{};
  std::array<Complex, 3> acc{};
  for (int a = 0; a < 3; ++a) {
    const double phase = m2[a] * baseline / (2.0 * energy);
    const Complex evolve = std::exp(Complex{0.0, -phase});
    for (Flavor beta : all_flavors)
      acc[index_of(beta)] += std::conj(u(alpha, a)) * evolve * u(beta, a);
  }
  out.a_e = acc[0];
  out.a_mu = acc[1];
  out.a_tau = acc[2];
  return out;
}

ProbabilityRow plane_wave_probabilities(const PmnsMatrix& u, const MassSplittings& splittings,
                                        double energy, double baseline, Flavor alpha) {
  const FlavorAmplitudes a = plane_wave_amplitudes(u, splittings, energy, baseline, alpha);
  return {std::norm(a.a_e), std::norm(a.a_mu), std::norm(a.a_tau)};
}

double oscillation_length(double energy, double dm2_ab) {
  if (dm2_ab == 0.0) throw std::domain_error("degenerate pair: oscillation length is infinite");
  return 4.0 * pi * energy / std::abs(dm2_ab);
}

double coherence_length(const WavePacketConfig& config, double energy, double dm2_ab) {
  if (dm2_ab == 0.0) throw std::domain_error("degenerate pair: coherence length is infinite");
  return four_sqrt2 * config.sigma_x * energy * energy / std::abs(dm2_ab);
}

double localization_factor(const WavePacketConfig& config, double energy, double dm2_ab,
                           double zeta) {
  if (dm2_ab == 0.0) return 1.0;
  const double ratio = config.sigma_x / oscillation_length(energy, dm2_ab);
  const double one_minus_zeta = 1.0 - zeta;
  return std::exp(-2.0 * pi * pi * one_minus_zeta * one_minus_zeta * ratio * ratio);
}

double wave_packet_probability(const PmnsMatrix& u, const OscillationParams& params,
                               const WavePacketConfig& config, double baseline, Flavor alpha,
                               Flavor beta, DampingMode damping) {
  if (baseline < 0.0) throw std::invalid_argument("baseline must be non-negative");
  const MassSplittings s = mass_splittings(params);
  const double e = params.energy;

  Complex sum{};
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const Complex coeff = std::conj(u(alpha, a - 1)) * u(beta, a - 1) * u(alpha, b - 1) *
                            std::conj(u(beta, b - 1));
      const double dm2 = s(a, b);
      if (a == b || dm2 == 0.0) {
        // Diagonal and degenerate pairs: infinite oscillation and
        // coherence lengths, phase 0, damping 1, F = 1.
        sum += coeff;
        continue;
      }
      const double phase = dm2 * baseline / (2.0 * e);  // 2 pi L / L_osc
      double suppression = 1.0;
      if (damping == DampingMode::full) {
        const double x = baseline / coherence_length(config, e, dm2);
        suppression = (x * x > 700.0 ? 0.0 : std::exp(-x * x)) *
                      localization_factor(config, e, dm2, params.zeta);
      }
      sum += coeff * std::exp(Complex{0.0, -phase}) * suppression;
    }
  }
  // Summands pair up as conjugates; any imaginary residue is noise.
  double p = sum.real();
  if (p < 0.0 && p > -1e-12) p = 0.0;
  if (p > 1.0 && p < 1.0 + 1e-12) p = 1.0;
  return p;
}

ProbabilityRow wave_packet_probabilities(const PmnsMatrix& u, const OscillationParams& params,
                                         const WavePacketConfig& config, double baseline,
                                         Flavor alpha, DampingMode damping) {
  return {wave_packet_probability(u, params, config, baseline, alpha, Flavor::e, damping),
          wave_packet_probability(u, params, config, baseline, alpha, Flavor::mu, damping),
          wave_packet_probability(u, params, config, baseline, alpha, Flavor::tau, damping)};
}

Complex wave_packet_amplitude(const PmnsMatrix& u, const OscillationParams& params,
                              const WavePacketConfig& config, double baseline, double time,
                              Flavor alpha, Flavor beta) {
  if (!config.has_split())
    throw std::invalid_argument(
        "wave_packet_amplitude needs both production and detection widths");
  params.validate();
  const MassSplittings s = mass_splittings(params);
  return amplitude_at_offset(u, params, config, masses_squared(s), baseline, time - baseline,
                             alpha, beta);
}

QuadratureResult time_integration_check(const PmnsMatrix& u, const OscillationParams& params,
                                        const WavePacketConfig& config, double baseline,
                                        Flavor alpha) {
  if (!config.has_split())
    throw std::invalid_argument(
        "time_integration_check needs both production and detection widths");
  params.validate();
  const MassSplittings s = mass_splittings(params);
  const auto m2 = masses_squared(s);
  const double sigma = config.sigma_x;

  auto intensity = [&](Flavor beta, double tau) {
    return std::norm(
        amplitude_at_offset(u, params, config, m2, baseline, tau, alpha, beta));
  };
  auto total = [&](double tau) {
    double v = 0.0;
    for (Flavor beta : all_flavors) v += intensity(beta, tau);
    return v;
  };

  // The integrand is a cluster of Gaussians centered at tau_a =
  // m_a^2 L / (2 E^2); widen the window until the tails are negligible.
  const double peak = std::max(total(0.0), total(m2[2] * baseline /
                                                 (2.0 * params.energy * params.energy)));
  if (!(peak > 0.0)) throw std::runtime_error("wave-packet integrand vanishes at its center");
  double width = 10.0 * sigma;
  while ((total(-width) > 1e-16 * peak || total(width) > 1e-16 * peak) &&
         width < 1e9 * sigma)
    width *= 2.0;

  // The built-in error estimate is far too pessimistic on narrow Gaussian
  // clusters, so convergence is judged by agreement between two rules.
  using quad_lo = boost::math::quadrature::gauss_kronrod<double, 31>;
  using quad_hi = boost::math::quadrature::gauss_kronrod<double, 61>;
  std::array<double, 3> integral{};
  std::array<double, 3> cross_check{};
  for (Flavor beta : all_flavors) {
    auto f = [&](double tau) { return intensity(beta, tau); };
    integral[index_of(beta)] = quad_hi::integrate(f, -width, width, 15, 1e-12);
    cross_check[index_of(beta)] = quad_lo::integrate(f, -width, width, 15, 1e-12);
  }
  // The comparison below is on the normalized triple, so the relevant
  // error scale is the total integral.
  const double total_integral = integral[0] + integral[1] + integral[2];
  double worst_error = 0.0;
  for (int i = 0; i < 3; ++i)
    worst_error =
        std::max(worst_error, std::abs(integral[i] - cross_check[i]) / total_integral);
  if (worst_error > 1e-6) {
    std::ostringstream msg;
    msg << "time quadrature did not converge (relative error estimate " << worst_error << ")";
    throw std::runtime_error(msg.str());
  }

  const double quad_sum = total_integral;
  const ProbabilityRow closed = wave_packet_probabilities(u, params, config, baseline, alpha);
  const double closed_sum = closed.sum();

  QuadratureResult result;
  result.error_estimate = worst_error;
  for (Flavor beta : all_flavors) {
    const double dev =
        std::abs(integral[index_of(beta)] / quad_sum - closed[beta] / closed_sum);
    result.max_deviation = std::max(result.max_deviation, dev);
  }
  return result;
}

}  // namespace nucorr
