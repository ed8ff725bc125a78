#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/config.hpp"
#include "pinch/montecarlo.hpp"

namespace pinch {

enum class Preset { Fig1, Fig2A, Fig2B, Fig3A, Fig3B, Fig4 };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Preset preset);
std::string_view to_string(OutputFormat format);
Preset parse_preset(std::string_view text);

/// Version written into every results file.
inline constexpr int kResultsSchemaVersion = 1;

/// Config parse/validation failure. key() is the dotted key path involved,
/// empty for syntax errors that precede a key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  std::vector<Scheme> schemes;
  MetricKind metric = MetricKind::ErgodicSum;
  SweepAxis axis = SweepAxis::TxPowerDbm;
  std::vector<double> axis_values;
  std::uint64_t n_trials = 100000;
  std::uint64_t master_seed = 1;
  std::string output = "results.csv";
  OutputFormat format = OutputFormat::Csv;
  bool analytics = true;
  bool fixed_placement = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parsed experiment. Powers are kept in dBm as written; `system` carries
/// the watt values converted once at parse time.
struct ExperimentConfig {
  std::optional<Preset> preset;
  double tx_power_dbm = 10.0;
  double noise_dbm = -90.0;
  double r_target = 1.0;
  SystemParams system;
  RunConfig run;

  SystemConfig system_config() const { return SystemConfig(system); }
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the flat `section.key = value` document. Unknown keys, duplicate
/// keys, missing required keys and out-of-range values raise ConfigError.
/// When `preset` is given, every preset-defined field overrides the value
/// written in the document.
ExperimentConfig parse_config(std::string_view document);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Effective configuration in the same document format; parse_config of the
/// echo yields an identical ExperimentConfig.
std::string echo_config(const ExperimentConfig& cfg);

/// Complete configuration for a figure preset.
ExperimentConfig preset_config(Preset preset);

struct ResultRow {
  Scheme scheme = Scheme::PinD2;
  SweepAxis axis = SweepAxis::TxPowerDbm;
  double axis_value = 0.0;
  std::string metric;
  double value = 0.0;
  double ci_half_width = 0.0;
  std::uint64_t n_trials = 0;
  Provenance provenance = Provenance::Simulated;
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

/// Simulated rows for every scheme and axis value, followed by closed-form
/// rows where an analytical result applies to the configuration.
std::vector<ResultRow> compute_rows(const ExperimentConfig& cfg, unsigned workers = 0);

std::string format_csv(const std::vector<ResultRow>& rows);
std::string format_json(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg);

/// Computes the rows and writes cfg.run.output plus the effective-config echo
/// next to it (same stem, `.cfg` extension). Throws std::runtime_error on
/// I/O failure.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, unsigned workers = 0);

struct FigureOptions {
  std::optional<std::uint64_t> n_trials;
  std::optional<std::uint64_t> master_seed;
  OutputFormat format = OutputFormat::Csv;
  unsigned workers = 0;
};

/// Runs a figure preset into out_dir and writes a gnuplot script next to the
/// data. Returns the files written.
std::vector<std::filesystem::path> reproduce_figure(Preset preset,
                                                    const std::filesystem::path& out_dir,
                                                    const FigureOptions& options = {});

}  // namespace pinch
