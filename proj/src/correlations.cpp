#include "nucorr/correlations.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nucorr {

namespace {

double clip_probability(double p) {
  if (p < 0.0 && p >= -1e-12) return 0.0;
  return p;
}

// Bit carried by each flavor mode in the |n_e n_mu n_tau> index.
int mode_bit(Flavor f) {
  switch (f) {
    case Flavor::e: return 4;
    case Flavor::mu: return 2;
    default: return 1;
  }
}

// Characteristic polynomial of a 4x4 matrix by Faddeev-LeVerrier,
// roots by Durand-Kerner. Fallback when the iterative eigensolver
// fails to converge.
std::array<Complex, 4> quartic_eigenvalues(const Eigen::Matrix4cd& m) {
  // p(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0
  Eigen::Matrix4cd mk = m;
  std::array<Complex, 4> c{};
  Complex ck = -mk.trace();
  c[3] = ck;
  for (int k = 2; k >= 0; --k) {
    mk = m * (mk + ck * Eigen::Matrix4cd::Identity());
    ck = -mk.trace() / static_cast<double>(4 - k);
    c[k] = ck;
  }

  std::array<Complex, 4> r{Complex{0.4, 0.9}, Complex{-0.66, 0.52},
                           Complex{-0.12, -0.97}, Complex{0.81, -0.35}};
  for (int iter = 0; iter < 200; ++iter) {
    double shift = 0.0;
    for (int i = 0; i < 4; ++i) {
      const Complex num =
          (((r[i] + c[3]) * r[i] + c[2]) * r[i] + c[1]) * r[i] + c[0];
      Complex den{1.0, 0.0};
      for (int j = 0; j < 4; ++j)
        if (j != i) den *= r[i] - r[j];
      const Complex step = num / den;
      r[i] -= step;
      shift = std::max(shift, std::abs(step));
    }
    if (shift < 1e-14) break;
  }
  return r;
}

double concurrence_from_spectrum(const std::array<Complex, 4>& eigenvalues) {
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) {
    const Complex ev = eigenvalues[i];
    if (std::abs(ev.imag()) > 1e-8 || ev.real() < -1e-8)
      throw std::runtime_error("spin-flipped product has an invalid eigenvalue");
    double re = ev.real();
    if (re < 0.0) re = 0.0;  // clamp [-1e-10, 0) noise on rank-deficient products
    lambda[i] = std::sqrt(re);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace

FlavorDensityMatrix density_from_amplitudes(const FlavorAmplitudes& a) {
  if (std::abs(a.norm_squared() - 1.0) > 1e-9)
    throw std::invalid_argument("amplitudes are not normalized");
  const std::array<Complex, 3> v{a.a_e, a.a_mu, a.a_tau};
  FlavorDensityMatrix rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho.rho[i][j] = v[i] * std::conj(v[j]);
  return rho;
}

double l1_norm(const FlavorDensityMatrix& rho) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) sum += std::abs(rho.rho[i][j]);
  return sum;
}

double coherence_from_probabilities(const ProbabilityRow& p) {
  const double pe = clip_probability(p.p_e);
  const double pm = clip_probability(p.p_mu);
  const double pt = clip_probability(p.p_tau);
  return 2.0 * (std::sqrt(pe * pm) + std::sqrt(pe * pt) + std::sqrt(pm * pt));
}

ThreeModeState three_mode_state(const FlavorAmplitudes& a) {
  ThreeModeState s;
  s.psi[mode_bit(Flavor::e)] = a.a_e;
  s.psi[mode_bit(Flavor::mu)] = a.a_mu;
  s.psi[mode_bit(Flavor::tau)] = a.a_tau;
  return s;
}

TwoQubitDensityMatrix partial_trace(const ThreeModeState& psi, Flavor traced_mode) {
  std::array<Flavor, 2> kept{};
  int n = 0;
  for (Flavor f : all_flavors)
    if (f != traced_mode) kept[n++] = f;  // (e, mu, tau) order, lower index first

  auto full_index = [&](int i, int j, int t) {
    return i * mode_bit(kept[0]) + j * mode_bit(kept[1]) + t * mode_bit(traced_mode);
  };

  TwoQubitDensityMatrix rho;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Complex sum{};
          for (int t = 0; t < 2; ++t)
            sum += psi.psi[full_index(i, j, t)] * std::conj(psi.psi[full_index(k, l, t)]);
          rho.rho[2 * i + j][2 * k + l] = sum;
        }
  return rho;
}

double wootters_concurrence(const TwoQubitDensityMatrix& rho) {
  Eigen::Matrix4cd r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = rho.rho[i][j];

  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("spectral failure: density matrix is not Hermitian");

  // (sigma_y x sigma_y) is real: antidiagonal (-1, 1, 1, -1).
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;

  // The lambda_i (square roots of the spectrum of rho * rho_tilde) equal the
  // singular values of sqrt(rho) Y sqrt(rho)^*, since
  // A A^dagger = sqrt(rho) Y rho^* Y sqrt(rho) ~ rho rho_tilde. The singular
  // values come out real and non-negative with no square-root noise
  // amplification near the rank-deficient spectrum.
  const Eigen::Matrix4cd hermitian = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(hermitian);
  if (es.info() != Eigen::Success) {
    // characteristic-polynomial fallback on the non-Hermitian product
    return concurrence_from_spectrum(
        quartic_eigenvalues(r * (y * r.conjugate() * y)));
  }
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (ev(i) < -1e-8)
      throw std::runtime_error("spectral failure: density matrix is not positive");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  const Eigen::Matrix4cd sqrt_rho =
      es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix4cd a = sqrt_rho * y * sqrt_rho.conjugate();

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(a);
  const Eigen::Vector4d lambda = svd.singularValues();  // decreasing order
  const double c = lambda(0) - lambda(1) - lambda(2) - lambda(3);
  return std::clamp(c, 0.0, 1.0);
}

double pure_concurrence(Complex a00, Complex a01, Complex a10, Complex a11) {
  const double norm =
      std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("two-qubit amplitudes are not normalized");
  return 2.0 * std::abs(a00 * a11 - a01 * a10);
}

double flavor_concurrence(double p_beta, double p_gamma) {
  return 2.0 * std::sqrt(clip_probability(p_beta) * clip_probability(p_gamma));
}

CorrelationReport correlation_report(const ProbabilityRow& p) {
  CorrelationReport report;
  report.concurrence_emu = flavor_concurrence(p.p_e, p.p_mu);
  report.concurrence_etau = flavor_concurrence(p.p_e, p.p_tau);
  report.concurrence_mutau = flavor_concurrence(p.p_mu, p.p_tau);
  report.l1_norm = coherence_from_probabilities(p);
  report.identity_residual = std::abs(report.l1_norm - report.concurrence_sum());
  return report;
}

}  // namespace nucorr
