#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fraccouple/generators.hpp"

namespace fraccouple {

enum class Figure { fig1, fig2, fig3, fig4, fig5, custom };

std::string_view to_string(Figure f) noexcept;
Figure parse_figure(std::string_view name);

struct Analyses {
  bool corr = false;
  bool dfa = false;
  bool surrogate = false;
};

/// Declarative sweep: the grid is the Cartesian product d1 x d2 x w (d2 and
/// w are ignored for single-component processes), each point run with
/// `ensemble` seeds.
struct ExperimentConfig {
  Figure figure = Figure::custom;
  Process process = Process::arfima2;
  std::vector<double> d1 = {0.4};
  std::vector<double> d2 = {0.4};
  std::vector<double> w = {0.8};
  std::size_t ensemble = 10;
  std::size_t n = 1u << 17;
  std::size_t kernel_length = kDefaultKernelLength;
  std::size_t burn_in = 50000;
  std::uint64_t seed = 1;
  Analyses analysis = {true, false, false};
  /// Lag grid for correlation curves, as accepted by parse_lag_spec.
  std::string lags = "log:1:1000";
  /// Lags reported individually in summary.csv.
  std::vector<std::size_t> summary_lags = {1, 10, 100, 1000};
  int dfa_order = 1;
  bool allow_full_w = false;
  VolatilityTail tail = VolatilityTail::mean_field;
  bool keep_runs = false;
  std::size_t jobs = 1;
  std::filesystem::path output_dir = "results";

  /// Generator parameters of every grid point, seed left at 0.
  std::vector<GenParams> grid() const;
  /// Throws ParameterError naming the offending field.
  void validate() const;
};

/// Built-in figure pipelines.
ExperimentConfig preset_config(Figure figure);

/// Per-run seed: derive_seed(master, {grid_index, ensemble_index}).
std::uint64_t run_seed(std::uint64_t master, std::size_t grid_index, std::size_t ensemble_index) noexcept;
/// Surrogate seed for a run: derive_seed(run_seed, {2}).
std::uint64_t surrogate_seed(std::uint64_t run_seed) noexcept;

/// Parses the key-value config grammar (see README). A `preset` key, if
/// present, is applied first and the remaining keys override it. Unknown or
/// repeated keys and malformed values raise ParseError with the line number;
/// the result is validated.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key = value` assignment; used by the parser and by CLI
/// overrides. Throws ParameterError for unknown keys or bad values.
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Every field, defaults resolved, in the same grammar parse_config reads.
std::string effective_config_text(const ExperimentConfig& config);

struct SummaryRow {
  std::size_t grid_index = 0;
  GenParams point;
  std::string statistic;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};

struct ExperimentReport {
  std::vector<SummaryRow> rows;
  /// One line per failed grid point.
  std::vector<std::string> errors;
  bool ok() const noexcept { return errors.empty(); }

  /// First row for (grid_index, statistic), if any.
  const SummaryRow* find(std::size_t grid_index, std::string_view statistic) const;
};

/// Runs the sweep, writes summary.csv, effective-config.txt, errors.log,
/// ensemble-mean curve files and (with keep_runs) per-run CSVs into
/// output_dir. A failing grid point is logged and skipped; an unwritable
/// output directory throws IoError.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes the summary table (`grid_index,process,d1,d2,w,statistic,mean,stderr,count`).
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace fraccouple
