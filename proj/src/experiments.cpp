#include "fraccouple/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "fraccouple/correlation.hpp"
#include "fraccouple/dfa.hpp"
#include "fraccouple/errors.hpp"
#include "fraccouple/rng.hpp"
#include "fraccouple/series_io.hpp"
#include "fraccouple/surrogate.hpp"

namespace fraccouple {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = v.find(',', start);
    out.push_back(trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view key, std::string_view tok) {
  const std::string s(tok);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || !std::isfinite(v)) {
    throw ParameterError(std::string(key) + ": '" + s + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view tok) {
  const std::string s(tok);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos, 0);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || s.front() == '-' || pos != s.size()) {
    throw ParameterError(std::string(key) + ": '" + s + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view tok) {
  if (tok == "true" || tok == "yes" || tok == "1") return true;
  if (tok == "false" || tok == "no" || tok == "0") return false;
  throw ParameterError(std::string(key) + ": '" + std::string(tok) + "' is not a boolean");
}

std::vector<double> parse_reals(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (auto tok : split_list(value)) out.push_back(parse_real(key, tok));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single run analysis

struct Curve {
  std::vector<std::size_t> x;
  std::vector<std::vector<double>> columns;
};

struct RunResult {
  std::vector<std::pair<std::string, double>> stats;
  Curve corr;
  Curve dfa;
  std::string error;
};

std::string lag_stat(std::string_view prefix, std::size_t lag) {
  return std::string(prefix) + "_at_lag_" + std::to_string(lag);
}

double band_fraction(const CorrFunction& c, double band) {
  std::size_t inside = 0, total = 0;
  for (std::size_t i = 0; i < c.lags.size(); ++i) {
    if (c.lags[i] == 0) continue;
    ++total;
    if (std::abs(c.values[i]) < band) ++inside;
  }
  return total ? static_cast<double>(inside) / static_cast<double>(total) : 0.0;
}

double value_at(const CorrFunction& c, std::size_t lag) {
  for (std::size_t i = 0; i < c.lags.size(); ++i) {
    if (c.lags[i] == lag) return c.values[i];
  }
  return std::nan("");
}

RunResult analyze_run(const ExperimentConfig& cfg, const GenParams& point, std::uint64_t seed,
                      const std::filesystem::path& run_stem) {
  RunResult r;
  GenParams p = point;
  p.seed = seed;
  const SeriesPair pair = generate(p);
  if (!run_stem.empty()) {
    std::filesystem::path csv = run_stem;
    csv += ".csv";
    write_series_csv(csv, pair);
    auto meta = open_output(metadata_path_for(csv));
    meta << series_metadata_json(pair);
  }

  const bool vol = is_volatility(p.process);
  const bool two = pair.has_y();
  const Transform tf = vol ? Transform::absolute : Transform::raw;
  const std::vector<double> ax = vol ? abs_values(pair.x) : pair.x;
  const std::vector<double> ay = two ? (vol ? abs_values(pair.y) : pair.y) : std::vector<double>{};

  if (vol) {
    r.stats.emplace_back("mean_vol_x", *pair.mean_vol_x);
    if (two) r.stats.emplace_back("mean_vol_y", *pair.mean_vol_y);
  }

  std::vector<std::size_t> summary_lags;
  const std::vector<std::size_t> lags = parse_lag_spec(cfg.lags);
  for (std::size_t lag : cfg.summary_lags) {
    if (std::binary_search(lags.begin(), lags.end(), lag)) summary_lags.push_back(lag);
  }
  const double band = null_band(p.n);

  if (cfg.analysis.corr) {
    const CorrFunction axf = autocorr(ax, lags, tf);
    r.corr.x = lags;
    r.corr.columns.push_back(axf.values);
    for (std::size_t lag : summary_lags) r.stats.emplace_back(lag_stat("A_x", lag), value_at(axf, lag));
    if (two) {
      const CorrFunction ayf = autocorr(ay, lags, tf);
      const CorrFunction cf = crosscorr(ax, ay, lags, tf);
      r.corr.columns.push_back(ayf.values);
      r.corr.columns.push_back(cf.values);
      for (std::size_t lag : summary_lags) r.stats.emplace_back(lag_stat("A_y", lag), value_at(ayf, lag));
      for (std::size_t lag : summary_lags) r.stats.emplace_back(lag_stat("C", lag), value_at(cf, lag));
      r.stats.emplace_back("C_band_fraction", band_fraction(cf, band));
    }
  }

  DfaOptions dopt;
  dopt.order = cfg.dfa_order;
  if (cfg.analysis.dfa) {
    const DfaResult dx = dfa(ax, dopt);
    r.dfa.x = dx.window_sizes;
    r.dfa.columns.push_back(dx.fluctuations);
    r.stats.emplace_back("alpha_x", dx.alpha);
    if (two) {
      const DfaResult dy = dfa(ay, dopt);
      r.dfa.columns.push_back(dy.fluctuations);
      r.stats.emplace_back("alpha_y", dy.alpha);
    }
  }

  if (cfg.analysis.surrogate) {
    SeriesPair analyzed;
    analyzed.params = pair.params;
    analyzed.x = ax;
    analyzed.y = ay;
    SurrogateSpec spec;
    spec.seed = surrogate_seed(seed);
    const SeriesPair surr = surrogate_pair(analyzed, spec);
    const CorrFunction sax = autocorr(surr.x, lags, tf);
    for (std::size_t lag : summary_lags) r.stats.emplace_back(lag_stat("A_x_surr", lag), value_at(sax, lag));
    if (cfg.analysis.corr) r.corr.columns.push_back(sax.values);
    if (two) {
      const CorrFunction scf = crosscorr(surr.x, surr.y, lags, tf);
      for (std::size_t lag : summary_lags) r.stats.emplace_back(lag_stat("C_surr", lag), value_at(scf, lag));
      r.stats.emplace_back("C_surr_band_fraction", band_fraction(scf, band));
      if (cfg.analysis.corr) r.corr.columns.push_back(scf.values);
    }
    if (cfg.analysis.dfa) {
      r.stats.emplace_back("alpha_x_surr", dfa(surr.x, dopt).alpha);
      if (two) r.stats.emplace_back("alpha_y_surr", dfa(surr.y, dopt).alpha);
    }
  }
  return r;
}

std::vector<std::string> corr_columns(const ExperimentConfig& cfg, bool two) {
  std::vector<std::string> names{"A_x"};
  if (two) names.insert(names.end(), {"A_y", "C"});
  if (cfg.analysis.surrogate) {
    names.push_back("A_x_surr");
    if (two) names.push_back("C_surr");
  }
  return names;
}

void write_curve(const std::filesystem::path& path, const char* xname, const std::vector<std::string>& names,
                 const std::vector<const Curve*>& runs) {
  const Curve& first = *runs.front();
  auto out = open_output(path);
  out << xname;
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < first.x.size(); ++i) {
    out << first.x[i];
    for (std::size_t c = 0; c < first.columns.size(); ++c) {
      double s = 0.0;
      for (const Curve* run : runs) s += run->columns[c][i];
      out << ',' << format_double(s / static_cast<double>(runs.size()));
    }
    out << '\n';
  }
}

std::string describe(const GenParams& p) {
  std::ostringstream os;
  os << to_string(p.process) << " d1=" << p.d1;
  if (is_two_component(p.process)) os << " d2=" << p.d2 << " w=" << p.w;
  return os.str();
}

}  // namespace

std::string_view to_string(Figure f) noexcept {
  switch (f) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4: return "fig4";
    case Figure::fig5: return "fig5";
    case Figure::custom: return "custom";
  }
  return "custom";
}

Figure parse_figure(std::string_view name) {
  for (Figure f : {Figure::fig1, Figure::fig2, Figure::fig3, Figure::fig4, Figure::fig5, Figure::custom}) {
    if (name == to_string(f)) return f;
  }
  throw ParameterError("unknown preset '" + std::string(name) + "' (expected fig1..fig5 or custom)");
}

ExperimentConfig preset_config(Figure figure) {
  ExperimentConfig c;
  c.figure = figure;
  c.analysis = {};
  switch (figure) {
    case Figure::fig1:
      c.process = Process::arfima2;
      c.d1 = {0.4};
      c.d2 = {0.4};
      c.w = {0.8};
      c.analysis.corr = true;
      break;
    case Figure::fig2:
      c.process = Process::arfima2;
      c.d1 = {0.4};
      c.d2 = {0.4};
      c.w = {0.8};
      c.analysis.corr = true;
      c.analysis.surrogate = true;
      break;
    case Figure::fig3:
      c.process = Process::arfima2;
      c.d1 = {0.4};
      c.d2 = {0.4};
      c.w = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      c.analysis.corr = true;
      break;
    case Figure::fig4:
    case Figure::fig5:
      c.process = figure == Figure::fig4 ? Process::arfima2 : Process::fiarch2;
      c.d1 = {0.4};
      c.d2 = {0.1};
      c.w = {1.0, 0.9, 0.7, 0.5};
      c.analysis.dfa = true;
      break;
    case Figure::custom:
      c.analysis.corr = true;
      break;
  }
  return c;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t grid_index, std::size_t ensemble_index) noexcept {
  return derive_seed(master, {grid_index, ensemble_index});
}

std::uint64_t surrogate_seed(std::uint64_t seed) noexcept { return derive_seed(seed, {2}); }

std::vector<GenParams> ExperimentConfig::grid() const {
  std::vector<GenParams> out;
  const bool two = is_two_component(process);
  const std::vector<double> d2s = two ? d2 : std::vector<double>{d2.empty() ? 0.0 : d2.front()};
  const std::vector<double> ws = two ? w : std::vector<double>{1.0};
  for (double a : d1) {
    for (double b : d2s) {
      for (double c : ws) {
        GenParams p;
        p.process = process;
        p.d1 = a;
        p.d2 = b;
        p.w = c;
        p.n = n;
        p.kernel_length = kernel_length;
        p.burn_in = burn_in;
        p.seed = 0;
        p.allow_full_w = allow_full_w;
        p.tail = tail;
        out.push_back(p);
      }
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (ensemble < 1) throw ParameterError("ensemble must be >= 1");
  if (jobs < 1) throw ParameterError("jobs must be >= 1");
  if (d1.empty()) throw ParameterError("d1 needs at least one value");
  if (is_two_component(process) && (d2.empty() || w.empty())) {
    throw ParameterError("d2 and w need at least one value for two-component processes");
  }
  if (dfa_order < 1 || dfa_order > kMaxDfaOrder) throw ParameterError("dfa_order must be 1..3");
  const auto lag_grid = parse_lag_spec(lags);
  if (analysis.corr || analysis.surrogate) {
    if (lag_grid.back() + 2 >= n) {
      throw ParameterError("lags: largest lag " + std::to_string(lag_grid.back()) + " needs n > lag + 2");
    }
  }
  for (const GenParams& p : grid()) p.validate();
}

namespace {

void apply_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  if (key == "figure") {
    c.figure = parse_figure(value);
  } else if (key == "process") {
    c.process = parse_process(value);
  } else if (key == "d1") {
    c.d1 = parse_reals(key, value);
  } else if (key == "d2") {
    c.d2 = parse_reals(key, value);
  } else if (key == "w") {
    c.w = parse_reals(key, value);
  } else if (key == "ensemble") {
    c.ensemble = parse_unsigned(key, value);
  } else if (key == "n") {
    c.n = parse_unsigned(key, value);
  } else if (key == "kernel_length") {
    c.kernel_length = parse_unsigned(key, value);
  } else if (key == "burn_in") {
    c.burn_in = parse_unsigned(key, value);
  } else if (key == "seed") {
    c.seed = parse_unsigned(key, value);
  } else if (key == "analysis") {
    c.analysis = {};
    for (auto tok : split_list(value)) {
      if (tok == "corr") {
        c.analysis.corr = true;
      } else if (tok == "dfa") {
        c.analysis.dfa = true;
      } else if (tok == "surrogate") {
        c.analysis.surrogate = true;
      } else if (!tok.empty()) {
        throw ParameterError("analysis: unknown estimator '" + std::string(tok) + "' (expected corr, dfa, surrogate)");
      }
    }
  } else if (key == "lags") {
    parse_lag_spec(std::string(value));
    c.lags = std::string(value);
  } else if (key == "summary_lags") {
    c.summary_lags.clear();
    for (auto tok : split_list(value)) c.summary_lags.push_back(parse_unsigned(key, tok));
  } else if (key == "dfa_order") {
    c.dfa_order = static_cast<int>(parse_unsigned(key, value));
  } else if (key == "allow_full_w") {
    c.allow_full_w = parse_bool(key, value);
  } else if (key == "volatility_tail") {
    c.tail = parse_volatility_tail(value);
  } else if (key == "keep_runs") {
    c.keep_runs = parse_bool(key, value);
  } else if (key == "jobs") {
    c.jobs = parse_unsigned(key, value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else {
    throw ParameterError("unknown key '" + std::string(key) + "'");
  }
}

}  // namespace

void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
  apply_value(config, trim(key), trim(value));
}

ExperimentConfig parse_config(std::istream& in) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::optional<Entry> preset;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    Entry e{std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))), line_no};
    if (e.key.empty()) throw ParseError("missing key before '='", line_no);
    if (e.value.empty()) throw ParseError("missing value for '" + e.key + "'", line_no);
    const bool dup = std::any_of(entries.begin(), entries.end(), [&](const Entry& x) { return x.key == e.key; }) ||
                     (preset && e.key == "preset");
    if (dup) throw ParseError("duplicate key '" + e.key + "'", line_no);
    if (e.key == "preset") {
      preset = e;
    } else {
      entries.push_back(std::move(e));
    }
  }

  ExperimentConfig config;
  if (preset) {
    try {
      config = preset_config(parse_figure(preset->value));
    } catch (const ParameterError& err) {
      throw ParseError(err.what(), preset->line);
    }
  }
  for (const Entry& e : entries) {
    try {
      apply_value(config, e.key, e.value);
    } catch (const ParameterError& err) {
      throw ParseError(err.what(), e.line);
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  try {
    return parse_config(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::string effective_config_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# effective configuration, all defaults resolved\n";
  os << "figure = " << to_string(c.figure) << '\n';
  os << "process = " << to_string(c.process) << '\n';
  os << "d1 = " << join(c.d1) << '\n';
  os << "d2 = " << join(c.d2) << '\n';
  os << "w = " << join(c.w) << '\n';
  os << "ensemble = " << c.ensemble << '\n';
  os << "n = " << c.n << '\n';
  os << "kernel_length = " << c.kernel_length << '\n';
  os << "burn_in = " << c.burn_in << '\n';
  os << "seed = " << c.seed << '\n';
  std::vector<std::string> an;
  if (c.analysis.corr) an.emplace_back("corr");
  if (c.analysis.dfa) an.emplace_back("dfa");
  if (c.analysis.surrogate) an.emplace_back("surrogate");
  os << "analysis = ";
  for (std::size_t i = 0; i < an.size(); ++i) os << (i ? ", " : "") << an[i];
  os << '\n';
  os << "lags = " << c.lags << '\n';
  os << "summary_lags = " << join(c.summary_lags) << '\n';
  os << "dfa_order = " << c.dfa_order << '\n';
  os << "allow_full_w = " << (c.allow_full_w ? "true" : "false") << '\n';
  os << "volatility_tail = " << to_string(c.tail) << '\n';
  os << "keep_runs = " << (c.keep_runs ? "true" : "false") << '\n';
  os << "jobs = " << c.jobs << '\n';
  os << "output_dir = " << c.output_dir.string() << '\n';
  os << "# run seed = derive_seed(seed, {grid_index, ensemble_index}); surrogate seed = derive_seed(run seed, {2})\n";
  return os.str();
}

const SummaryRow* ExperimentReport::find(std::size_t grid_index, std::string_view statistic) const {
  for (const SummaryRow& r : rows) {
    if (r.grid_index == grid_index && r.statistic == statistic) return &r;
  }
  return nullptr;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "grid_index,process,d1,d2,w,statistic,mean,stderr,count\n";
  for (const SummaryRow& r : rows) {
    out << r.grid_index << ',' << to_string(r.point.process) << ',' << format_double(r.point.d1) << ','
        << format_double(r.point.d2) << ',' << format_double(r.point.w) << ',' << r.statistic << ','
        << format_double(r.mean) << ',' << format_double(r.stderr_) << ',' << r.count << '\n';
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::filesystem::path& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  if (config.keep_runs) {
    std::filesystem::create_directories(dir / "runs", ec);
    if (ec) throw IoError("cannot create '" + (dir / "runs").string() + "'");
  }
  {
    auto cfg_out = open_output(dir / "effective-config.txt");
    cfg_out << effective_config_text(config);
  }

  const std::vector<GenParams> grid = config.grid();
  const std::size_t tasks = grid.size() * config.ensemble;
  std::vector<RunResult> results(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t g = task / config.ensemble;
      const std::size_t e = task % config.ensemble;
      std::filesystem::path stem;
      if (config.keep_runs) stem = dir / "runs" / ("g" + std::to_string(g) + "_e" + std::to_string(e));
      try {
        results[task] = analyze_run(config, grid[g], run_seed(config.seed, g, e), stem);
      } catch (const std::exception& ex) {
        results[task].error = ex.what();
      }
    }
  };
  {
    const std::size_t width = std::min(config.jobs, tasks);
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < width; ++i) pool.emplace_back(worker);
    worker();
  }

  ExperimentReport report;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto first = results.begin() + static_cast<std::ptrdiff_t>(g * config.ensemble);
    const auto last = first + static_cast<std::ptrdiff_t>(config.ensemble);
    const auto failed = std::find_if(first, last, [](const RunResult& r) { return !r.error.empty(); });
    if (failed != last) {
      report.errors.push_back("grid " + std::to_string(g) + " (" + describe(grid[g]) + ") ensemble " +
                              std::to_string(failed - first) + ": " + failed->error);
      continue;
    }
    for (std::size_t s = 0; s < first->stats.size(); ++s) {
      double sum = 0.0;
      for (auto it = first; it != last; ++it) sum += it->stats[s].second;
      const double m = static_cast<double>(config.ensemble);
      const double mean = sum / m;
      double ss = 0.0;
      for (auto it = first; it != last; ++it) ss += (it->stats[s].second - mean) * (it->stats[s].second - mean);
      SummaryRow row;
      row.grid_index = g;
      row.point = grid[g];
      row.statistic = first->stats[s].first;
      row.mean = mean;
      row.stderr_ = config.ensemble > 1 ? std::sqrt(ss / (m - 1.0) / m) : 0.0;
      row.count = config.ensemble;
      report.rows.push_back(std::move(row));
    }
    const bool two = is_two_component(grid[g].process);
    std::vector<const Curve*> corr_runs, dfa_runs;
    for (auto it = first; it != last; ++it) {
      corr_runs.push_back(&it->corr);
      dfa_runs.push_back(&it->dfa);
    }
    if (config.analysis.corr) {
      write_curve(dir / ("curves_g" + std::to_string(g) + "_corr.csv"), "n", corr_columns(config, two), corr_runs);
    }
    if (config.analysis.dfa) {
      std::vector<std::string> names{"F_x"};
      if (two) names.emplace_back("F_y");
      write_curve(dir / ("curves_g" + std::to_string(g) + "_dfa.csv"), "n", names, dfa_runs);
    }
  }

  {
    auto out = open_output(dir / "summary.csv");
    write_summary_csv(out, report.rows);
    if (!out) throw IoError("write failed for summary.csv");
  }
  {
    auto out = open_output(dir / "errors.log");
    for (const auto& e : report.errors) out << e << '\n';
  }
  return report;
}

}  // namespace fraccouple
