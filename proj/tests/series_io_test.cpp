#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fraccouple/errors.hpp"
#include "fraccouple/series_io.hpp"

using namespace fraccouple;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fraccouple_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("series CSV round trip is exact") {
  GenParams g;
  g.process = Process::fiarch2;
  g.d1 = 0.3;
  g.d2 = 0.2;
  g.w = 0.7;
  g.n = 1000;
  g.kernel_length = 100;
  const SeriesPair pair = generate(g);
  const fs::path dir = temp_dir("roundtrip");
  write_series_csv(dir / "pair.csv", pair);
  const SeriesPair back = read_series_csv(dir / "pair.csv");
  CHECK(back.x == pair.x);
  CHECK(back.y == pair.y);

  const Table t = read_csv(dir / "pair.csv");
  CHECK(t.names == std::vector<std::string>{"t", "x", "y"});
  CHECK(t.column("t").front() == 1.0);
  CHECK(t.rows() == 1000);
  CHECK_THROWS_AS(t.column("z"), ParameterError);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream bad_field("a,b\n1,2\n3,oops\n");
  try {
    read_csv(bad_field);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream short_row("a,b\n1,2\n\n4\n");
  try {
    read_csv(short_row);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
  CHECK_THROWS_AS(read_csv(fs::path("/nonexistent/file.csv")), IoError);
}

TEST_CASE("metadata sidecar records every parameter") {
  GenParams g;
  g.process = Process::fiarch2;
  g.d1 = 0.3;
  g.d2 = 0.1;
  g.w = 0.9;
  g.n = 500;
  g.kernel_length = 50;
  g.seed = 1234;
  const SeriesPair pair = generate(g);
  const auto j = nlohmann::json::parse(series_metadata_json(pair));
  CHECK(j["process"] == "fiarch2");
  CHECK(j["d1"] == 0.3);
  CHECK(j["d2"] == 0.1);
  CHECK(j["w"] == 0.9);
  CHECK(j["n"] == 500);
  CHECK(j["kernel_length"] == 50);
  CHECK(j["burn_in"] == 500);
  CHECK(j["seed"] == 1234);
  CHECK(j["volatility_tail"] == "mean_field");
  CHECK(j["tail_mass_x"].get<double>() == pair.tail_mass_x);
  CHECK(j["mean_vol_y"].get<double>() == *pair.mean_vol_y);
  CHECK(metadata_path_for("out/pair.csv") == fs::path("out/pair.meta.json"));
}

TEST_CASE("writers") {
  std::ostringstream k;
  write_kernel_csv(k, FracKernel(0.4, 3));
  CHECK(k.str().rfind("n,a_n\n1,0.4", 0) == 0);

  CorrFunction c;
  c.lags = {1, 2};
  c.values = {0.5, 0.25};
  c.n_samples = {9, 8};
  std::ostringstream cs;
  write_corr_csv(cs, c);
  CHECK(cs.str() == "n,value,n_samples\n1,0.5,9\n2,0.25,8\n");

  DfaResult r;
  r.window_sizes = {8, 16};
  r.fluctuations = {1.5, 2.0};
  r.alpha = 0.75;
  r.order = 2;
  std::ostringstream ds;
  write_dfa_csv(ds, r);
  CHECK(ds.str() == "n,F\n8,1.5\n16,2\n");
  const auto j = nlohmann::json::parse(dfa_summary_json(r));
  CHECK(j["alpha"] == 0.75);
  CHECK(j["order"] == 2);

  CHECK_THROWS_AS(open_output("/nonexistent/dir/x.csv"), IoError);
}
