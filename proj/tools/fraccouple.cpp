// fraccouple: generate coupled long-memory series and check their scaling.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fraccouple/correlation.hpp"
#include "fraccouple/dfa.hpp"
#include "fraccouple/errors.hpp"
#include "fraccouple/experiments.hpp"
#include "fraccouple/generators.hpp"
#include "fraccouple/kernel.hpp"
#include "fraccouple/series_io.hpp"
#include "fraccouple/surrogate.hpp"

namespace fs = std::filesystem;
using namespace fraccouple;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

void write_pair(const fs::path& out, const SeriesPair& pair) {
  write_series_csv(out, pair);
  auto meta = open_output(metadata_path_for(out));
  meta << series_metadata_json(pair);
}

std::vector<double> load_column(const Table& table, const std::string& name, bool absolute) {
  const auto& col = table.column(name);
  return absolute ? abs_values(col) : col;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled ARFIMA / FIARCH series generation and scaling analysis"};
  app.require_subcommand(1);

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Dump fractional weights a_n(d) as CSV");
  double k_d = 0.4;
  std::size_t k_len = 1000;
  std::string k_out;
  kernel_cmd->add_option("--d", k_d, "Scaling parameter in (-0.5, 0.5)")->required();
  kernel_cmd->add_option("--len", k_len, "Truncation length L")->default_val(1000);
  kernel_cmd->add_option("--out", k_out, "Output CSV (stdout if omitted)");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a series or pair");
  GenParams gp;
  std::string g_process = "arfima2";
  std::string g_tail = "mean_field";
  std::size_t g_burn = 0;
  std::string g_out;
  gen_cmd->add_option("--process", g_process, "arfima | arfima2 | fiarch | fiarch2")->default_val("arfima2");
  gen_cmd->add_option("--d1", gp.d1, "Scaling parameter of x")->default_val(0.4);
  gen_cmd->add_option("--d2", gp.d2, "Scaling parameter of y")->default_val(0.4);
  gen_cmd->add_option("--w", gp.w, "Coupling W")->default_val(0.8);
  gen_cmd->add_option("--n", gp.n, "Output length")->default_val(1u << 17);
  gen_cmd->add_option("--len", gp.kernel_length, "Kernel truncation L")->default_val(kDefaultKernelLength);
  auto* burn_opt = gen_cmd->add_option("--burn-in", g_burn, "Discarded prefix (default max(L, min(10L, 1e5)))");
  gen_cmd->add_option("--seed", gp.seed, "RNG seed")->default_val(42);
  gen_cmd->add_flag("--allow-full-w", gp.allow_full_w, "Accept W in [0, 1] instead of [0.5, 1]");
  gen_cmd->add_option("--volatility-tail", g_tail, "mean_field | renormalize (FIARCH only)")->default_val("mean_field");
  gen_cmd->add_option("--out", g_out, "Output CSV")->required();

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Correlation and DFA estimators");
  analyze_cmd->require_subcommand(1);
  auto* corr_cmd = analyze_cmd->add_subcommand("corr", "Auto- or cross-correlation");
  std::string c_in, c_cols = "x", c_lags, c_out;
  bool c_abs = false, c_negative = false;
  corr_cmd->add_option("--in", c_in, "Input series CSV")->required();
  corr_cmd->add_option("--cols", c_cols, "One column (auto) or two columns a,b (cross C(a_t, b_{t-n}))")
      ->default_val("x");
  corr_cmd->add_flag("--abs", c_abs, "Analyze absolute values");
  corr_cmd->add_option("--lags", c_lags, "log:LO:HI[:PER_DECADE] | lin:LO:HI[:STEP] | n1,n2,...");
  corr_cmd->add_flag("--negative-lags", c_negative, "Cross only: also emit n < 0 via C(b_t, a_{t-|n|})");
  corr_cmd->add_option("--out", c_out, "Output CSV (stdout if omitted)");

  auto* dfa_cmd = analyze_cmd->add_subcommand("dfa", "Detrended fluctuation analysis");
  std::string d_in, d_col = "x", d_out;
  bool d_abs = false;
  DfaOptions dopt;
  std::size_t d_fit_min = 0, d_fit_max = 0;
  dfa_cmd->add_option("--in", d_in, "Input series CSV")->required();
  dfa_cmd->add_option("--col", d_col, "Column to analyze")->default_val("x");
  dfa_cmd->add_flag("--abs", d_abs, "Analyze absolute values");
  dfa_cmd->add_option("--order", dopt.order, "Detrending order 1..3")->default_val(1);
  auto* fit_min_opt = dfa_cmd->add_option("--fit-min", d_fit_min, "Smallest window in the fit (default 16)");
  auto* fit_max_opt = dfa_cmd->add_option("--fit-max", d_fit_max, "Largest window in the fit (default N/8)");
  dfa_cmd->add_option("--out", d_out, "Output CSV; summary goes to <stem>.summary.json")->required();

  // surrogate
  auto* surr_cmd = app.add_subcommand("surrogate", "Fourier phase-randomized surrogate");
  std::string s_in, s_mode = "independent", s_out;
  std::uint64_t s_seed = 0;
  surr_cmd->add_option("--in", s_in, "Input series CSV")->required();
  surr_cmd->add_option("--mode", s_mode, "independent | shared_shuffle")->default_val("independent");
  surr_cmd->add_option("--seed", s_seed, "Phase seed")->default_val(0);
  surr_cmd->add_option("--out", s_out, "Output CSV")->required();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run a figure pipeline or a custom sweep");
  std::string e_preset, e_config, e_out;
  std::size_t e_ensemble = 0, e_jobs = 0;
  bool e_keep = false;
  std::vector<std::string> e_set;
  auto* preset_opt = exp_cmd->add_option("--preset", e_preset, "fig1 | fig2 | fig3 | fig4 | fig5");
  exp_cmd->add_option("--config", e_config, "Config file (key = value lines)")->excludes(preset_opt);
  auto* ens_opt = exp_cmd->add_option("--ensemble", e_ensemble, "Seeds per grid point");
  auto* jobs_opt = exp_cmd->add_option("--jobs", e_jobs, "Worker threads");
  auto* out_opt = exp_cmd->add_option("--out", e_out, "Output directory");
  exp_cmd->add_flag("--keep-runs", e_keep, "Write per-run series CSVs");
  exp_cmd->add_option("--set", e_set, "Override a config key: key=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernel_cmd->parsed()) {
      const FracKernel kernel(k_d, k_len);
      if (k_out.empty()) {
        write_kernel_csv(std::cout, kernel);
      } else {
        auto out = open_output(k_out);
        write_kernel_csv(out, kernel);
      }
      return 0;
    }

    if (gen_cmd->parsed()) {
      gp.process = parse_process(g_process);
      gp.tail = parse_volatility_tail(g_tail);
      if (burn_opt->count() > 0) gp.burn_in = g_burn;
      const SeriesPair pair = generate(gp);
      for (const auto& w : pair.warnings) std::cerr << "warning: " << w << '\n';
      write_pair(g_out, pair);
      return 0;
    }

    if (corr_cmd->parsed()) {
      const Table table = read_csv(fs::path(c_in));
      const auto cols = split(c_cols, ',');
      if (cols.empty() || cols.size() > 2) throw ParameterError("--cols takes one or two column names");
      const auto a = load_column(table, cols[0], c_abs);
      const auto lags = c_lags.empty() ? default_lags(a.size()) : parse_lag_spec(c_lags);
      const Transform tf = c_abs ? Transform::absolute : Transform::raw;
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!c_out.empty()) {
        file = open_output(c_out);
        out = &file;
      }
      if (cols.size() == 1) {
        write_corr_csv(*out, autocorr(a, lags, tf));
        return 0;
      }
      const auto b = load_column(table, cols[1], c_abs);
      CorrFunction c = crosscorr(a, b, lags, tf);
      if (c_negative) {
        const CorrFunction back = crosscorr(b, a, lags, tf);
        *out << "n,value,n_samples\n";
        for (std::size_t i = back.lags.size(); i-- > 0;) {
          if (back.lags[i] == 0) continue;
          *out << '-' << back.lags[i] << ',' << format_double(back.values[i]) << ',' << back.n_samples[i] << '\n';
        }
        for (std::size_t i = 0; i < c.lags.size(); ++i) {
          *out << c.lags[i] << ',' << format_double(c.values[i]) << ',' << c.n_samples[i] << '\n';
        }
      } else {
        write_corr_csv(*out, c);
      }
      return 0;
    }

    if (dfa_cmd->parsed()) {
      const Table table = read_csv(fs::path(d_in));
      const auto x = load_column(table, d_col, d_abs);
      if (fit_min_opt->count() > 0) dopt.fit_min = d_fit_min;
      if (fit_max_opt->count() > 0) dopt.fit_max = d_fit_max;
      const DfaResult r = dfa(x, dopt);
      {
        auto out = open_output(d_out);
        write_dfa_csv(out, r);
      }
      fs::path summary = d_out;
      summary.replace_extension(".summary.json");
      auto js = open_output(summary);
      js << dfa_summary_json(r);
      std::cout << "alpha = " << r.alpha << " +/- " << r.fit_stderr << " over [" << r.fit_min << ", " << r.fit_max
                << "]\n";
      return 0;
    }

    if (surr_cmd->parsed()) {
      const SeriesPair in = read_series_csv(s_in);
      SurrogateSpec spec;
      spec.mode = parse_surrogate_mode(s_mode);
      spec.seed = s_seed;
      write_series_csv(fs::path(s_out), surrogate_pair(in, spec));
      return 0;
    }

    if (exp_cmd->parsed()) {
      ExperimentConfig config;
      if (!e_config.empty()) {
        config = load_config(e_config);
      } else if (!e_preset.empty()) {
        config = preset_config(parse_figure(e_preset));
      } else {
        throw ParameterError("experiment needs --preset or --config");
      }
      for (const auto& kv : e_set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParameterError("--set expects key=value, got '" + kv + "'");
        apply_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (ens_opt->count() > 0) config.ensemble = e_ensemble;
      if (jobs_opt->count() > 0) config.jobs = e_jobs;
      if (out_opt->count() > 0) config.output_dir = e_out;
      if (e_keep) config.keep_runs = true;
      config.validate();
      const ExperimentReport report = run_experiment(config);
      std::cout << "wrote " << report.rows.size() << " summary rows to " << (config.output_dir / "summary.csv").string()
                << '\n';
      for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
      return report.ok() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
