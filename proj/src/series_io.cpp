#include "fraccouple/series_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fraccouple/errors.hpp"

namespace fraccouple {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw ParameterError("no column named '" + name + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_commas(body);
    if (!have_header) {
      for (auto f : fields) {
        if (f.empty()) throw ParseError("empty column name in header", line_no);
        table.names.emplace_back(f);
      }
      table.columns.resize(table.names.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.names.size()) {
      throw ParseError("expected " + std::to_string(table.names.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v = 0.0;
      const auto f = fields[i];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw ParseError("field '" + std::string(f) + "' is not a number", line_no);
      }
      table.columns[i].push_back(v);
    }
  }
  if (!have_header) throw ParseError("empty CSV input", 0);
  return table;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_series_csv(std::ostream& out, const SeriesPair& pair) {
  out << (pair.has_y() ? "t,x,y\n" : "t,x\n");
  for (std::size_t i = 0; i < pair.x.size(); ++i) {
    out << (i + 1) << ',' << format_double(pair.x[i]);
    if (pair.has_y()) out << ',' << format_double(pair.y[i]);
    out << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const SeriesPair& pair) {
  auto out = open_output(path);
  write_series_csv(out, pair);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

SeriesPair read_series_csv(const std::filesystem::path& path) {
  const Table table = read_csv(path);
  SeriesPair pair;
  pair.x = table.column("x");
  for (const auto& name : table.names) {
    if (name == "y") pair.y = table.column("y");
  }
  return pair;
}

std::string series_metadata_json(const SeriesPair& pair) {
  const GenParams& p = pair.params;
  nlohmann::ordered_json j;
  j["process"] = std::string(to_string(p.process));
  j["d1"] = p.d1;
  if (is_two_component(p.process)) {
    j["d2"] = p.d2;
    j["w"] = p.w;
  }
  j["n"] = p.n;
  j["kernel_length"] = p.kernel_length;
  j["burn_in"] = p.resolved_burn_in();
  j["seed"] = p.seed;
  j["allow_full_w"] = p.allow_full_w;
  if (is_volatility(p.process)) j["volatility_tail"] = std::string(to_string(p.tail));
  j["tail_mass_x"] = pair.tail_mass_x;
  if (is_two_component(p.process)) j["tail_mass_y"] = pair.tail_mass_y;
  if (pair.mu_x) j["mu_x"] = *pair.mu_x;
  if (pair.mu_y) j["mu_y"] = *pair.mu_y;
  if (pair.mean_vol_x) j["mean_vol_x"] = *pair.mean_vol_x;
  if (pair.mean_vol_y) j["mean_vol_y"] = *pair.mean_vol_y;
  j["surrogate"] = pair.surrogate;
  return j.dump(2) + "\n";
}

std::filesystem::path metadata_path_for(const std::filesystem::path& csv) {
  std::filesystem::path out = csv;
  out.replace_extension(".meta.json");
  return out;
}

void write_kernel_csv(std::ostream& out, const FracKernel& kernel) {
  out << "n,a_n\n";
  const auto w = kernel.weights();
  for (std::size_t i = 0; i < w.size(); ++i) out << (i + 1) << ',' << format_double(w[i]) << '\n';
}

void write_corr_csv(std::ostream& out, const CorrFunction& corr) {
  out << "n,value,n_samples\n";
  for (std::size_t i = 0; i < corr.lags.size(); ++i) {
    out << corr.lags[i] << ',' << format_double(corr.values[i]) << ',' << corr.n_samples[i] << '\n';
  }
}

void write_dfa_csv(std::ostream& out, const DfaResult& result) {
  out << "n,F\n";
  for (std::size_t i = 0; i < result.window_sizes.size(); ++i) {
    out << result.window_sizes[i] << ',' << format_double(result.fluctuations[i]) << '\n';
  }
}

std::string dfa_summary_json(const DfaResult& result) {
  nlohmann::ordered_json j;
  j["alpha"] = result.alpha;
  j["stderr"] = result.fit_stderr;
  j["fit_min"] = result.fit_min;
  j["fit_max"] = result.fit_max;
  j["order"] = result.order;
  return j.dump(2) + "\n";
}

}  // namespace fraccouple
