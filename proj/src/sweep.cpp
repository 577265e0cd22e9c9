#include "nucorr/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nucorr/units.hpp"

namespace nucorr {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &consumed);
  } catch (const std::exception&) {
    consumed = std::string::npos;
  }
  if (consumed != value.size() || !std::isfinite(v))
    throw std::invalid_argument("key '" + key + "': cannot parse number '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw std::invalid_argument("key '" + key + "': expected an integer, got '" + value + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_sigma_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(units::parse_length(item));
    } catch (const std::exception& e) {
      throw std::invalid_argument("key '" + key + "': " + e.what());
    }
  }
  if (out.empty())
    throw std::invalid_argument("key '" + key + "': empty length list");
  return out;
}

// 12 significant digits, locale independent.
std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

ProbabilityRow evaluate_point(const SweepConfig& config, const PmnsMatrix& u,
                              const MassSplittings& splittings,
                              const WavePacketConfig* packet, double baseline_km) {
  const double baseline = units::km_to_natural(baseline_km);
  if (config.mode == EvolutionMode::plane_wave)
    return plane_wave_probabilities(u, splittings, config.params.energy, baseline,
                                    config.initial_flavor);
  return wave_packet_probabilities(u, config.params, *packet, baseline,
                                   config.initial_flavor);
}

}  // namespace

std::vector<double> BaselineGrid::values_km() const {
  if (min_km < 0.0 || !(max_km > min_km))
    throw std::invalid_argument("baseline grid needs 0 <= min < max");
  if (points < 2) throw std::invalid_argument("baseline grid needs at least 2 points");
  std::vector<double> out(points);
  if (scale == GridScale::linear) {
    for (int i = 0; i < points; ++i)
      out[i] = min_km + (max_km - min_km) * i / (points - 1);
  } else {
    if (!(min_km > 0.0))
      throw std::invalid_argument("log-spaced baseline grid needs min > 0");
    const double ratio = std::log(max_km / min_km);
    for (int i = 0; i < points; ++i)
      out[i] = min_km * std::exp(ratio * i / (points - 1));
  }
  return out;
}

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  c.params.angles = MixingAngles::from_sin_squared(0.314, 0.008, 0.45);
  c.params.delta_cp = 0.0;
  c.params.small_splitting = 7.92e-5;
  c.params.large_splitting = 2.6e-3;
  c.params.energy = units::gev_to_ev(10.0);
  c.params.zeta = 0.2;
  c.sigma_x_natural = {units::meters_to_natural(2e-18), units::meters_to_natural(2e-17),
                       units::meters_to_natural(2e-16)};
  // Two periods of the slow oscillation at 10 GeV; the default sigma_x list
  // puts one coherence length below, one inside, and one above this range.
  c.grid.min_km = 0.0;
  c.grid.max_km = 630000.0;
  c.grid.points = 3000;
  return c;
}

void SweepConfig::validate() const {
  params.validate();
  grid.values_km();  // throws on a bad grid
  if (mode == EvolutionMode::wave_packet) {
    if (sigma_x_natural.empty())
      throw std::invalid_argument("wave-packet mode needs at least one sigma_x");
    for (double s : sigma_x_natural)
      if (!(s > 0.0)) throw std::invalid_argument("sigma_x must be positive");
  }
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig config = SweepConfig::defaults();
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (key == "flavor") {
        config.initial_flavor = flavor_from_string(value);
      } else if (key == "mode") {
        if (value == "plane") config.mode = EvolutionMode::plane_wave;
        else if (value == "wavepacket") config.mode = EvolutionMode::wave_packet;
        else throw std::invalid_argument("mode must be 'plane' or 'wavepacket'");
      } else if (key == "l_min_km") {
        config.grid.min_km = parse_double(key, value);
      } else if (key == "l_max_km") {
        config.grid.max_km = parse_double(key, value);
      } else if (key == "l_points") {
        const int n = parse_int(key, value);
        if (n < 2) throw std::invalid_argument("l_points must be >= 2");
        config.grid.points = n;
      } else if (key == "l_scale") {
        if (value == "lin") config.grid.scale = GridScale::linear;
        else if (value == "log") config.grid.scale = GridScale::logarithmic;
        else throw std::invalid_argument("l_scale must be 'lin' or 'log'");
      } else if (key == "sigma_x") {
        config.sigma_x_natural = parse_sigma_list(key, value);
      } else if (key == "sin2_theta12" || key == "sin2_theta13" || key == "sin2_theta23") {
        const double v = parse_double(key, value);
        MixingAngles& a = config.params.angles;
        MixingAngles probe = a;
        double* slot = key == "sin2_theta12" ? &probe.theta12
                       : key == "sin2_theta13" ? &probe.theta13
                                               : &probe.theta23;
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("sin^2(theta) must lie in [0, 1]");
        *slot = std::asin(std::sqrt(v));
        a = probe;
      } else if (key == "delta_cp_deg") {
        config.params.delta_cp = parse_double(key, value) * std::numbers::pi / 180.0;
      } else if (key == "dm2_small_ev2") {
        config.params.small_splitting = parse_double(key, value);
      } else if (key == "dm2_large_ev2") {
        config.params.large_splitting = parse_double(key, value);
      } else if (key == "energy_gev") {
        config.params.energy = units::gev_to_ev(parse_double(key, value));
      } else if (key == "zeta") {
        config.params.zeta = parse_double(key, value);
      } else if (key == "format") {
        if (value == "csv") config.format = OutputFormat::csv;
        else if (value == "json") config.format = OutputFormat::json;
        else throw std::invalid_argument("format must be 'csv' or 'json'");
      } else if (key == "output") {
        config.output_path = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_number) + ": " +
                                  e.what());
    }
  }
  config.validate();
  return config;
}

SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const PmnsMatrix u = build_pmns(config.params.angles, config.params.delta_cp);
  const MassSplittings splittings = mass_splittings(config.params);
  const std::vector<double> baselines = config.grid.values_km();

  std::vector<double> sigmas = config.sigma_x_natural;
  std::sort(sigmas.begin(), sigmas.end());
  if (config.mode == EvolutionMode::plane_wave) sigmas = {0.0};

  std::vector<SweepRecord> records;
  records.reserve(sigmas.size() * baselines.size());
  for (double sigma : sigmas) {
    WavePacketConfig packet{};
    if (config.mode == EvolutionMode::wave_packet)
      packet = WavePacketConfig::effective(sigma);
    for (double km : baselines) {
      SweepRecord rec;
      rec.sigma_x_m = sigma == 0.0 ? 0.0 : units::natural_to_meters(sigma);
      rec.baseline_km = km;
      try {
        rec.probabilities = evaluate_point(config, u, splittings, &packet, km);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "sweep point (sigma_x = " << rec.sigma_x_m << " m, L = " << km
            << " km) failed: " << e.what();
        throw std::runtime_error(msg.str());
      }
      rec.correlations = correlation_report(rec.probabilities);
      if (rec.correlations.identity_residual >= 1e-12 ||
          rec.correlations.l1_norm > 2.0 + 1e-12) {
        std::ostringstream msg;
        msg << "correlation invariant violated at (sigma_x = " << rec.sigma_x_m
            << " m, L = " << km << " km)";
        throw std::runtime_error(msg.str());
      }
      records.push_back(rec);
    }
  }
  return records;
}

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << "sigma_x_m,L_km,P_e,P_mu,P_tau,C_l1,C_emu,C_etau,C_mutau,identity_residual\n";
  for (const SweepRecord& r : records) {
    out << format_number(r.sigma_x_m) << ',' << format_number(r.baseline_km) << ','
        << format_number(r.probabilities.p_e) << ',' << format_number(r.probabilities.p_mu)
        << ',' << format_number(r.probabilities.p_tau) << ','
        << format_number(r.correlations.l1_norm) << ','
        << format_number(r.correlations.concurrence_emu) << ','
        << format_number(r.correlations.concurrence_etau) << ','
        << format_number(r.correlations.concurrence_mutau) << ','
        << format_number(r.correlations.identity_residual) << '\n';
  }
}

void emit_json(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    out << "  {\"sigma_x_m\": " << format_number(r.sigma_x_m)
        << ", \"L_km\": " << format_number(r.baseline_km)
        << ", \"P_e\": " << format_number(r.probabilities.p_e)
        << ", \"P_mu\": " << format_number(r.probabilities.p_mu)
        << ", \"P_tau\": " << format_number(r.probabilities.p_tau)
        << ", \"C_l1\": " << format_number(r.correlations.l1_norm)
        << ", \"C_emu\": " << format_number(r.correlations.concurrence_emu)
        << ", \"C_etau\": " << format_number(r.correlations.concurrence_etau)
        << ", \"C_mutau\": " << format_number(r.correlations.concurrence_mutau)
        << ", \"identity_residual\": " << format_number(r.correlations.identity_residual)
        << "}" << (i + 1 < records.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

void emit(const std::vector<SweepRecord>& records, const SweepConfig& config) {
  if (records.empty()) throw std::invalid_argument("no records to emit");
  auto write = [&](std::ostream& out) {
    if (config.format == OutputFormat::csv)
      emit_csv(records, out);
    else
      emit_json(records, out);
  };
  if (config.output_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(config.output_path);
  if (!out) throw std::runtime_error("cannot open output file '" + config.output_path + "'");
  write(out);
  if (!out.good())
    throw std::runtime_error("write failed for '" + config.output_path + "'");
}

}  // namespace nucorr
