// nu-correlate: three-flavor oscillation probabilities and the
// coherence/entanglement measures of the evolved state.

#include <CLI11.hpp>
#include <cstdio>
#include <random>
#include <vector>

#include "nucorr/correlations.hpp"
#include "nucorr/dynamics.hpp"
#include "nucorr/pmns.hpp"
#include "nucorr/sweep.hpp"
#include "nucorr/units.hpp"

namespace {

using namespace nucorr;

FlavorAmplitudes random_amplitudes(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::array<Complex, 3> v;
  double norm = 0.0;
  for (auto& c : v) {
    c = Complex{gauss(rng), gauss(rng)};
    norm += std::norm(c);
  }
  const double scale = 1.0 / std::sqrt(norm);
  return {v[0] * scale, v[1] * scale, v[2] * scale};
}

struct PropertyResult {
  const char* name;
  double worst;
  double limit;
};

int run_check() {
  std::mt19937_64 rng(0x5eedc0de);
  std::vector<PropertyResult> results;

  // PMNS unitarity over random angles and phases
  {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const PmnsMatrix u =
          build_pmns({angle(rng), angle(rng), angle(rng)}, phase(rng));
      worst = std::max(worst, unitarity_deviation(u));
    }
    results.push_back({"pmns_unitarity", worst, 1e-12});
  }

  // coherence = sum of concurrences, on random pure states
  {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const FlavorAmplitudes a = random_amplitudes(rng);
      const ProbabilityRow p{std::norm(a.a_e), std::norm(a.a_mu), std::norm(a.a_tau)};
      worst = std::max(worst, correlation_report(p).identity_residual);
    }
    results.push_back({"coherence_identity", worst, 1e-12});
  }

  // full Wootters pipeline against the closed flavor-mode form
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const FlavorAmplitudes a = random_amplitudes(rng);
      const ThreeModeState psi = three_mode_state(a);
      const std::array<double, 3> p{std::norm(a.a_e), std::norm(a.a_mu),
                                    std::norm(a.a_tau)};
      for (Flavor traced : all_flavors) {
        double expected = 1.0;
        for (Flavor f : all_flavors)
          if (f != traced) expected *= p[index_of(f)];
        expected = 2.0 * std::sqrt(expected);
        const double got = wootters_concurrence(partial_trace(psi, traced));
        worst = std::max(worst, std::abs(got - expected));
      }
    }
    results.push_back({"wootters_equivalence", worst, 1e-10});
  }

  // time quadrature of the space-time amplitude against the closed form
  {
    const SweepConfig defaults = SweepConfig::defaults();
    const PmnsMatrix u = build_pmns(defaults.params.angles, defaults.params.delta_cp);
    const double sigma = units::meters_to_natural(4e-16);
    const WavePacketConfig packet =
        WavePacketConfig::split(sigma / std::numbers::sqrt2, sigma / std::numbers::sqrt2);
    const MassSplittings s = mass_splittings(defaults.params);
    const double l_coh = coherence_length(packet, defaults.params.energy, s(3, 1));
    double worst = 0.0;
    for (double frac : {0.05, 0.1, 0.2, 0.3}) {
      const QuadratureResult r =
          time_integration_check(u, defaults.params, packet, frac * l_coh, Flavor::e);
      worst = std::max(worst, r.max_deviation);
    }
    results.push_back({"time_integration", worst, 1e-3});
  }

  int failures = 0;
  for (const PropertyResult& r : results) {
    const bool ok = r.worst < r.limit;
    std::printf("%-22s worst residual %.3e (limit %.0e) %s\n", r.name, r.worst, r.limit,
                ok ? "ok" : "VIOLATED");
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-flavor neutrino oscillation: probabilities, l1-norm coherence "
               "and flavor-mode concurrences"};
  app.require_subcommand(1);

  std::string config_path, flavor, mode, scale, format, out_path;
  std::vector<std::string> sigma_args;
  double l_min = -1.0, l_max = -1.0;
  int l_points = -1;

  CLI::App* sweep = app.add_subcommand("sweep", "run a baseline/width parameter sweep");
  sweep->add_option("--config", config_path, "key = value configuration file");
  sweep->add_option("--flavor", flavor, "initial flavor: e, mu or tau");
  sweep->add_option("--mode", mode, "plane or wavepacket");
  sweep->add_option("--sigma-x", sigma_args, "wave packet widths, e.g. 2e-17m 1e13/eV");
  sweep->add_option("--l-min", l_min, "baseline grid minimum [km]");
  sweep->add_option("--l-max", l_max, "baseline grid maximum [km]");
  sweep->add_option("--l-points", l_points, "baseline grid point count");
  sweep->add_option("--l-scale", scale, "lin or log");
  sweep->add_option("--format", format, "csv or json");
  sweep->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "emit the three-width coherence-vs-distance dataset with default parameters");
  std::string fig1_format = "csv", fig1_out;
  fig1->add_option("--format", fig1_format, "csv or json");
  fig1->add_option("--out", fig1_out, "output path (default stdout)");

  CLI::App* check = app.add_subcommand(
      "check", "run the invariant suite and exit nonzero on any violation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check();

    if (fig1->parsed()) {
      SweepConfig config = SweepConfig::defaults();
      if (fig1_format == "json") config.format = OutputFormat::json;
      else if (fig1_format != "csv") throw std::invalid_argument("format must be csv or json");
      config.output_path = fig1_out;
      emit(run_sweep(config), config);
      return 0;
    }

    SweepConfig config =
        config_path.empty() ? SweepConfig::defaults() : load_config_file(config_path);
    if (!flavor.empty()) config.initial_flavor = flavor_from_string(flavor);
    if (!mode.empty()) {
      if (mode == "plane") config.mode = EvolutionMode::plane_wave;
      else if (mode == "wavepacket") config.mode = EvolutionMode::wave_packet;
      else throw std::invalid_argument("--mode must be 'plane' or 'wavepacket'");
    }
    if (!sigma_args.empty()) {
      config.sigma_x_natural.clear();
      for (const std::string& s : sigma_args)
        config.sigma_x_natural.push_back(units::parse_length(s));
    }
    if (l_min >= 0.0) config.grid.min_km = l_min;
    if (l_max >= 0.0) config.grid.max_km = l_max;
    if (l_points >= 0) config.grid.points = l_points;
    if (!scale.empty()) {
      if (scale == "lin") config.grid.scale = GridScale::linear;
      else if (scale == "log") config.grid.scale = GridScale::logarithmic;
      else throw std::invalid_argument("--l-scale must be 'lin' or 'log'");
    }
    if (!format.empty()) {
      if (format == "csv") config.format = OutputFormat::csv;
      else if (format == "json") config.format = OutputFormat::json;
      else throw std::invalid_argument("--format must be 'csv' or 'json'");
    }
    if (!out_path.empty()) config.output_path = out_path;

    emit(run_sweep(config), config);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
