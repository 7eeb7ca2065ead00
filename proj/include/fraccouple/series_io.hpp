#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraccouple/correlation.hpp"
#include "fraccouple/dfa.hpp"
#include "fraccouple/generators.hpp"
#include "fraccouple/kernel.hpp"

namespace fraccouple {

/// Column-oriented numeric table read from a headed CSV file.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  /// Throws ParameterError if the column does not exist.
  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
};

/// Formats with 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Reads a comma-separated file whose first line is a header. Every other
/// line must hold one number per column; blank lines are skipped.
/// Throws ParseError with the offending line number.
Table read_csv(std::istream& in);
Table read_csv(const std::filesystem::path& path);

/// `t,x,y` (or `t,x`) with t starting at 1.
void write_series_csv(std::ostream& out, const SeriesPair& pair);
void write_series_csv(const std::filesystem::path& path, const SeriesPair& pair);

/// Rebuilds a pair from a series CSV (metadata fields left at defaults).
SeriesPair read_series_csv(const std::filesystem::path& path);

/// JSON sidecar with every GenParams field, tail masses and realized means.
std::string series_metadata_json(const SeriesPair& pair);
/// `pair.csv` -> `pair.meta.json`.
std::filesystem::path metadata_path_for(const std::filesystem::path& csv);

/// `n,a_n`.
void write_kernel_csv(std::ostream& out, const FracKernel& kernel);

/// `n,value,n_samples`.
void write_corr_csv(std::ostream& out, const CorrFunction& corr);

/// `n,F`.
void write_dfa_csv(std::ostream& out, const DfaResult& result);
/// {alpha, stderr, fit_min, fit_max, order}.
std::string dfa_summary_json(const DfaResult& result);

/// Opens for writing or throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace fraccouple
