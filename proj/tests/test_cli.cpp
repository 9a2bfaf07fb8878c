#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "crflow/config.hpp"
#include "crflow/surface.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = CRFLOW_CONFIG_DIR;

int run(const std::string& args) {
  const std::string cmd = std::string(CRFLOW_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path out_dir() {
  const fs::path dir = fs::temp_directory_path() / "crflow_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
  return out;
}

}  // namespace

TEST(Cli, CheckDefaultConfigPassesAndIsDeterministic) {
  const fs::path a = out_dir() / "a.json", b = out_dir() / "b.json";
  const std::string cfg = "--config " + (kConfigs / "default_suite.json").string();
  EXPECT_EQ(run("check " + cfg + " --out " + a.string() + " --csv"), 0);
  EXPECT_EQ(run("check " + cfg + " --out " + b.string()), 0);
  EXPECT_EQ(crflow::read_text_file(a), crflow::read_text_file(b));
  EXPECT_TRUE(fs::exists(out_dir() / "a.csv"));
}

TEST(Cli, CheckExitCodes) {
  const fs::path out = out_dir() / "m.json";
  EXPECT_EQ(run("check --config " + (kConfigs / "mismatched_alpha.json").string() + " --out " +
                out.string()),
            1);
  EXPECT_NE(crflow::read_text_file(out).find("\"pass\": false"), std::string::npos);
  EXPECT_EQ(run("check --config /nonexistent.json --out " + out.string()), 2);
  EXPECT_EQ(run("check --config " + (kConfigs / "default_suite.json").string() +
                " --suite nonsense --out " + out.string()),
            2);
  EXPECT_EQ(run("check --config " + (kConfigs / "default_suite.json").string() +
                " --precision-bits 8 --out " + out.string()),
            2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST(Cli, Sample) {
  const fs::path out = out_dir() / "s.csv";
  const std::string model = "--model " + (kConfigs / "default_alpha1.json").string();
  ASSERT_EQ(run("sample " + model + " --n 10 --seed 4 --out " + out.string()), 0);
  const auto rows = lines(out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], "re_z1,im_z1,re_z2,im_z2,rho_residual");

  crflow::ScopedPrecision p(192);
  const auto m = crflow::build_model(crflow::load_model(kConfigs / "default_alpha1.json"));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto c = cells(rows[k]);
    ASSERT_EQ(c.size(), 5u);
    EXPECT_LE(std::stod(c[4]), 1e-30);
    const crflow::Complex z1(crflow::Real::from_string(c[0]), crflow::Real::from_string(c[1]));
    const crflow::Complex z2(crflow::Real::from_string(c[2]), crflow::Real::from_string(c[3]));
    EXPECT_LE(abs(eval_rho(m, z1, z2)).to_double(), 1e-30);
  }

  ASSERT_EQ(run("sample " + model + " --n 0 --out " + out.string()), 0);
  EXPECT_EQ(lines(out).size(), 1u);
  EXPECT_EQ(run("sample " + model + " --r-min 0 --out " + out.string()), 2);
  EXPECT_EQ(run("sample --n 3 --out " + out.string()), 2);
}

TEST(Cli, Trace) {
  const fs::path out = out_dir() / "t.csv";
  const std::string model = "--model " + (kConfigs / "default_alpha1.json").string();
  ASSERT_EQ(run("trace " + model + " --z2 0.05,0.02 --t0 0.01 --times 0:1:0.1 --out " +
                out.string()),
            0);
  auto rows = lines(out);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LE(std::stod(cells(rows[k])[5]), 1e-25);

  ASSERT_EQ(run("trace " + model + " --z2 0.05,0.02 --t0 0.01 --times 0 --out " + out.string()),
            0);
  rows = lines(out);
  ASSERT_EQ(rows.size(), 2u);
  {
    crflow::ScopedPrecision p(192);
    const auto m = crflow::build_model(crflow::load_model(kConfigs / "default_alpha1.json"));
    const crflow::Complex z2(crflow::Real::from_string("0.05"), crflow::Real::from_string("0.02"));
    const crflow::Complex z1 = surface_z1(m, z2, crflow::Real::from_string("0.01"));
    const auto c = cells(rows[1]);
    EXPECT_LT(abs(crflow::Real::from_string(c[1]) - z1.real()).to_double(), 1e-55);
    EXPECT_LT(abs(crflow::Real::from_string(c[2]) - z1.imag()).to_double(), 1e-55);
  }

  // steep model: the orbit leaves the guarded domain and the trace stops early
  const std::string steep = "--model " + (kConfigs / "steep_trace.json").string();
  EXPECT_EQ(run("trace " + steep + " --z2 0.03,0 --t0 0.05 --times 0:1:0.05 --out " +
                out.string()),
            1);
  rows = lines(out);
  EXPECT_GT(rows.size(), 1u);
  EXPECT_LT(rows.size(), 22u);

  EXPECT_EQ(run("trace " + model + " --start 1,0,0.05,0 --out " + out.string()), 2);
}
