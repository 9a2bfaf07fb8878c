#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "crflow/config.hpp"
#include "crflow/errors.hpp"
#include "crflow/report.hpp"
#include "crflow/suites.hpp"

using namespace crflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "crflow_test_config";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(ModelConfig, ParsesAndBuilds) {
  const ModelConfig cfg = parse_model(R"({"alpha": "1e-10", "a": [[1, 0], ["0.5", -2]],
      "p": {"family": "inverse_power", "c": 1, "s": 1}, "q": {"poly": [0.1]},
      "eps0": 0.15, "delta0": 0.3, "precision_bits": 128})", -1);
  EXPECT_EQ(cfg.precision_bits, 128);
  EXPECT_FALSE(cfg.alpha_zero);
  ScopedPrecision p(128);
  EXPECT_EQ(cfg.alpha, Real::from_string("1e-10"));
  EXPECT_EQ(cfg.eps0, Real::from_string("0.15"));
  EXPECT_EQ(cfg.a[1], Complex(Real::from_string("0.5"), Real(-2)));
  const ModelSurface m = build_model(cfg);
  EXPECT_FALSE(m.alpha().is_zero());
  EXPECT_EQ(m.profile().q(Real(2)), Real::from_string("0.2"));
  EXPECT_THROW(build_radial(cfg), ConfigError);
}

TEST(ModelConfig, ExactZeroSelectsFlatBranch) {
  const char* base = R"({"a": [[1, 0]], "p": {"c": 1, "s": 1}, "eps0": 0.15, "delta0": 0.3,
                        "alpha": )";
  EXPECT_TRUE(parse_model(std::string(base) + "0}", 192).alpha_zero);
  EXPECT_TRUE(parse_model(std::string(base) + "\"0\"}", 192).alpha_zero);
  EXPECT_FALSE(parse_model(std::string(base) + "\"1e-300\"}", 192).alpha_zero);
}

TEST(ModelConfig, Diagnostics) {
  EXPECT_THROW(parse_model("{not json", 192), ConfigError);
  EXPECT_THROW(parse_model(R"({"alpha": 1, "a": [], "p": {"c": 1, "s": 1}, "eps0": 0.1,
                               "delta0": 0.1})", 192),
               ConfigError);
  EXPECT_THROW(parse_model(R"({"alpha": 1, "a": [[1,0]], "p": {"c": -1, "s": 1},
                               "eps0": 0.1, "delta0": 0.1})", 192),
               ConfigError);
  EXPECT_THROW(parse_model(R"({"alpha": "one", "a": [[1,0]], "p": {"c": 1, "s": 1},
                               "eps0": 0.1, "delta0": 0.1})", 192),
               ConfigError);
  EXPECT_THROW(parse_model(R"({"alpha": 1, "a": [[1,0]], "p": {"c": 1, "s": 1}, "eps0": 0.1,
                               "delta0": 0.1, "precision_bits": 16})", -1),
               ConfigError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), ConfigError);
}

TEST(ModelConfig, Radial) {
  const ModelConfig cfg = parse_model(R"({"kind": "radial", "p": {"c": 1, "s": 1},
      "Q": [[2, 0, 1], [0, 2, 1]], "eps0": 0.15, "delta0": 0.3})", 192);
  EXPECT_EQ(cfg.kind, ModelConfig::Kind::kRadial);
  EXPECT_NO_THROW(build_radial(cfg));
  EXPECT_THROW(parse_model(R"({"kind": "radial", "p": {"c": 1, "s": 1},
      "Q": [[0, 0, 1]], "eps0": 0.15, "delta0": 0.3})", 192),
               ConfigError);
}

TEST(SuiteConfig, ParsesAndResolvesPaths) {
  const SuiteConfig cfg = parse_suite_config(
      R"({"model": "m.json", "suites": ["tangency", "radial"], "grid": {"n": 7, "seed": 3},
          "precision_bits": 128, "field_alpha": 0, "output": {"json": "x.json", "csv": "x.csv"}})",
      "/base");
  EXPECT_EQ(cfg.model_path, fs::path("/base/m.json"));
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"tangency", "radial"}));
  EXPECT_EQ(cfg.grid.n, 7);
  EXPECT_EQ(cfg.grid.seed, 3u);
  EXPECT_EQ(cfg.precision_bits, 128);
  EXPECT_EQ(cfg.field_alpha, "0");
  EXPECT_EQ(cfg.out, fs::path("x.json"));
  EXPECT_EQ(cfg.csv, fs::path("x.csv"));

  EXPECT_EQ(parse_suite_config(R"({"model": "m.json"})", "").suites, all_suites());
  EXPECT_THROW(parse_suite_config(R"({"suites": ["all"]})", ""), ConfigError);
  EXPECT_THROW(parse_suite_config(R"({"model": "m.json", "suites": []})", ""), ConfigError);
  EXPECT_THROW(parse_suite_list("tangency,bogus"), ConfigError);
}

TEST(Report, AtomicWriteAndDeterministicJson) {
  const fs::path dir = scratch_dir();
  write(dir / "model.json", R"({"alpha": 1, "a": [[1, 0]], "p": {"c": 1, "s": 1},
                                "eps0": 0.15, "delta0": 0.3})");
  SuiteConfig cfg;
  cfg.model_path = dir / "model.json";
  cfg.suites = {"tangency", "recover"};
  cfg.grid.n = 10;
  const RunSummary a = run_suites(cfg, Exec::kParallel);
  const RunSummary b = run_suites(cfg, Exec::kSerial);
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_NE(to_text(a).find("tangency"), std::string::npos);

  write_atomic(dir / "r.json", to_json(a));
  EXPECT_EQ(read_text_file(dir / "r.json"), to_json(a));
  EXPECT_FALSE(fs::exists(dir / "r.json.tmp"));
  EXPECT_THROW(write_atomic(dir / "missing_dir" / "r.json", "x"), std::runtime_error);
}

TEST(Suites, GuardErrorsAreRecorded) {
  const fs::path dir = scratch_dir();
  write(dir / "model.json", R"({"alpha": 1, "a": [[1, 0]], "p": {"c": 1, "s": 1},
                                "eps0": 0.05, "delta0": 0.3})");
  SuiteConfig cfg;
  cfg.model_path = dir / "model.json";
  cfg.suites = {"invariance"};  // default annulus reaches 0.1 > eps0
  const RunSummary run = run_suites(cfg);
  EXPECT_TRUE(run.has_error());
  EXPECT_FALSE(run.pass());
}
