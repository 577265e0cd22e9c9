#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nucorr/correlations.hpp"
#include "nucorr/dynamics.hpp"

namespace nucorr {

enum class EvolutionMode { plane_wave, wave_packet };
enum class GridScale { linear, logarithmic };
enum class OutputFormat { csv, json };

struct BaselineGrid {
  double min_km = 0.0;
  double max_km = 2.0e4;
  int points = 2000;
  GridScale scale = GridScale::linear;

  std::vector<double> values_km() const;  // validated, sorted ascending
};

struct SweepConfig {
  Flavor initial_flavor = Flavor::e;
  EvolutionMode mode = EvolutionMode::wave_packet;
  BaselineGrid grid;
  std::vector<double> sigma_x_natural;  // eV^-1, one sweep pass each
  OscillationParams params;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty = stdout

  /// Benchmark defaults: standard mixing parameters, E = 10 GeV,
  /// zeta = 0.2, delta_cp = 0, three widths whose 3-1 coherence lengths
  /// fall below, inside and above the baseline range.
  static SweepConfig defaults();

  void validate() const;  // throws std::invalid_argument
};

struct SweepRecord {
  double sigma_x_m = 0.0;
  double baseline_km = 0.0;
  ProbabilityRow probabilities;
  CorrelationReport correlations;
};

/// Parses the flat key = value configuration document. Unknown keys and
/// malformed values raise std::invalid_argument naming the key and line.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config_file(const std::string& path);

/// Evaluates the grid, sorted by (sigma_x ascending, baseline ascending).
/// Every record is checked against the coherence identity at 1e-12.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_json(const std::vector<SweepRecord>& records, std::ostream& out);

/// Dispatches on config.format and config.output_path.
void emit(const std::vector<SweepRecord>& records, const SweepConfig& config);

}  // namespace nucorr
