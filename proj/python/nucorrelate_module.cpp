#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nucorr/correlations.hpp"
#include "nucorr/dynamics.hpp"
#include "nucorr/pmns.hpp"
#include "nucorr/sweep.hpp"
#include "nucorr/units.hpp"

namespace py = pybind11;
using namespace nucorr;

namespace {

std::vector<std::vector<Complex>> matrix_rows(const PmnsMatrix& m) {
  std::vector<std::vector<Complex>> rows(3, std::vector<Complex>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[i][j] = m.u[i][j];
  return rows;
}

OscillationParams make_params(double s2_12, double s2_13, double s2_23, double delta_cp,
                              double dm2_small, double dm2_large, double energy_gev,
                              double zeta) {
  OscillationParams p;
  p.angles = MixingAngles::from_sin_squared(s2_12, s2_13, s2_23);
  p.delta_cp = delta_cp;
  p.small_splitting = dm2_small;
  p.large_splitting = dm2_large;
  p.energy = units::gev_to_ev(energy_gev);
  p.zeta = zeta;
  return p;
}

py::dict report_dict(const CorrelationReport& r) {
  py::dict d;
  d["l1_norm"] = r.l1_norm;
  d["concurrence_emu"] = r.concurrence_emu;
  d["concurrence_etau"] = r.concurrence_etau;
  d["concurrence_mutau"] = r.concurrence_mutau;
  d["identity_residual"] = r.identity_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_nucorrelate, m) {
  m.doc() = "three-flavor neutrino oscillation probabilities and their "
            "coherence/entanglement measures";

  py::enum_<Flavor>(m, "Flavor")
      .value("e", Flavor::e)
      .value("mu", Flavor::mu)
      .value("tau", Flavor::tau);

  m.def(
      "pmns",
      [](double s2_12, double s2_13, double s2_23, double delta_cp) {
        return matrix_rows(
            build_pmns(MixingAngles::from_sin_squared(s2_12, s2_13, s2_23), delta_cp));
      },
      py::arg("sin2_theta12"), py::arg("sin2_theta13"), py::arg("sin2_theta23"),
      py::arg("delta_cp") = 0.0,
      "mixing matrix rows (e, mu, tau) over mass columns (1, 2, 3)");

  m.def(
      "unitarity_deviation",
      [](double s2_12, double s2_13, double s2_23, double delta_cp) {
        return unitarity_deviation(
            build_pmns(MixingAngles::from_sin_squared(s2_12, s2_13, s2_23), delta_cp));
      },
      py::arg("sin2_theta12"), py::arg("sin2_theta13"), py::arg("sin2_theta23"),
      py::arg("delta_cp") = 0.0);

  m.def(
      "plane_wave_probabilities",
      [](double baseline_km, Flavor alpha, double s2_12, double s2_13, double s2_23,
         double delta_cp, double dm2_small, double dm2_large, double energy_gev,
         double zeta) {
        const OscillationParams p = make_params(s2_12, s2_13, s2_23, delta_cp, dm2_small,
                                                dm2_large, energy_gev, zeta);
        const ProbabilityRow row =
            plane_wave_probabilities(build_pmns(p.angles, p.delta_cp), mass_splittings(p),
                                     p.energy, units::km_to_natural(baseline_km), alpha);
        return py::make_tuple(row.p_e, row.p_mu, row.p_tau);
      },
      py::arg("baseline_km"), py::arg("alpha") = Flavor::e, py::arg("sin2_theta12") = 0.314,
      py::arg("sin2_theta13") = 0.008, py::arg("sin2_theta23") = 0.45,
      py::arg("delta_cp") = 0.0, py::arg("dm2_small") = 7.92e-5,
      py::arg("dm2_large") = 2.6e-3, py::arg("energy_gev") = 10.0, py::arg("zeta") = 0.2);

  m.def(
      "wave_packet_probabilities",
      [](double baseline_km, double sigma_x_m, Flavor alpha, double s2_12, double s2_13,
         double s2_23, double delta_cp, double dm2_small, double dm2_large,
         double energy_gev, double zeta) {
        const OscillationParams p = make_params(s2_12, s2_13, s2_23, delta_cp, dm2_small,
                                                dm2_large, energy_gev, zeta);
        const WavePacketConfig c =
            WavePacketConfig::effective(units::meters_to_natural(sigma_x_m));
        const ProbabilityRow row =
            wave_packet_probabilities(build_pmns(p.angles, p.delta_cp), p, c,
                                      units::km_to_natural(baseline_km), alpha);
        return py::make_tuple(row.p_e, row.p_mu, row.p_tau);
      },
      py::arg("baseline_km"), py::arg("sigma_x_m"), py::arg("alpha") = Flavor::e,
      py::arg("sin2_theta12") = 0.314, py::arg("sin2_theta13") = 0.008,
      py::arg("sin2_theta23") = 0.45, py::arg("delta_cp") = 0.0,
      py::arg("dm2_small") = 7.92e-5, py::arg("dm2_large") = 2.6e-3,
      py::arg("energy_gev") = 10.0, py::arg("zeta") = 0.2);

  m.def(
      "oscillation_length_km",
      [](double energy_gev, double dm2) {
        return units::natural_to_km(oscillation_length(units::gev_to_ev(energy_gev), dm2));
      },
      py::arg("energy_gev"), py::arg("dm2"));

  m.def(
      "coherence_length_km",
      [](double sigma_x_m, double energy_gev, double dm2) {
        return units::natural_to_km(
            coherence_length(WavePacketConfig::effective(units::meters_to_natural(sigma_x_m)),
                             units::gev_to_ev(energy_gev), dm2));
      },
      py::arg("sigma_x_m"), py::arg("energy_gev"), py::arg("dm2"));

  m.def(
      "coherence",
      [](double p_e, double p_mu, double p_tau) {
        return coherence_from_probabilities({p_e, p_mu, p_tau});
      },
      py::arg("p_e"), py::arg("p_mu"), py::arg("p_tau"),
      "l1-norm coherence from a probability row");

  m.def("flavor_concurrence", &flavor_concurrence, py::arg("p_beta"), py::arg("p_gamma"));

  m.def(
      "correlation_report",
      [](double p_e, double p_mu, double p_tau) {
        return report_dict(correlation_report({p_e, p_mu, p_tau}));
      },
      py::arg("p_e"), py::arg("p_mu"), py::arg("p_tau"));

  m.def(
      "wootters_concurrence",
      [](Complex a_e, Complex a_mu, Complex a_tau, Flavor traced) {
        return wootters_concurrence(
            partial_trace(three_mode_state({a_e, a_mu, a_tau}), traced));
      },
      py::arg("a_e"), py::arg("a_mu"), py::arg("a_tau"), py::arg("traced"),
      "concurrence of the two flavor modes that remain after tracing one out");
}
