// crflow: run check suites, sample surface points, trace flow orbits.
//
// Exit codes: 0 pass, 1 check failure (or truncated trace), 2 usage/config error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crflow/config.hpp"
#include "crflow/errors.hpp"
#include "crflow/flow.hpp"
#include "crflow/report.hpp"
#include "crflow/suites.hpp"

using namespace crflow;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Real parse_real(const std::string& s, const std::string& what) {
  try {
    return Real::from_string(s);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: \"" + s + "\"");
  }
}

int digits_for(int bits) { return static_cast<int>(std::ceil(bits * 0.30103)) + 3; }

std::string point_row(const Complex& z1, const Complex& z2, int digits) {
  return z1.real().to_string(digits) + "," + z1.imag().to_string(digits) + "," +
         z2.real().to_string(digits) + "," + z2.imag().to_string(digits);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Times list: "a,b,c" or "start:stop:step".
std::vector<Real> parse_times(const std::string& spec) {
  std::vector<Real> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("times: expected start:stop:step");
    const Real start = parse_real(parts[0], "times");
    const Real stop = parse_real(parts[1], "times");
    const Real step = parse_real(parts[2], "times");
    if (!(step > Real(0))) throw ConfigError("times: step must be positive");
    // count from the decimal range so 0:1:0.1 gives 11 rows
    const double n = std::floor(((stop - start) / step).to_double() + 1e-9);
    if (n < 0) throw ConfigError("times: stop < start");
    for (long k = 0; k <= static_cast<long>(n); ++k) out.push_back(start + Real(k) * step);
    return out;
  }
  for (const auto& item : split(spec, ',')) {
    if (!item.empty()) out.push_back(parse_real(item, "times"));
  }
  if (out.empty()) throw ConfigError("times: empty list");
  return out;
}

struct ModelSource {
  std::string model;
  std::string config;
  std::optional<int> bits;

  ModelConfig load() const {
    if (!model.empty()) return load_model(model, bits.value_or(-1));
    if (!config.empty()) {
      const SuiteConfig cfg = load_suite_config(config);
      return load_model(cfg.model_path, bits ? *bits : cfg.precision_bits.value_or(-1));
    }
    throw ConfigError("one of --model or --config is required");
  }
};

int cmd_check(const std::string& config_path, const std::string& suites,
              std::optional<int> bits, std::optional<std::uint64_t> seed, const std::string& out,
              bool csv) {
  SuiteConfig cfg = load_suite_config(config_path);
  if (!suites.empty()) cfg.suites = parse_suite_list(suites);
  if (bits) cfg.precision_bits = *bits;
  if (seed) cfg.grid.seed = *seed;
  if (!out.empty()) cfg.out = out;
  if (csv && !cfg.csv) {
    std::filesystem::path p = cfg.out;
    cfg.csv = p.replace_extension(".csv");
  }

  const RunSummary run = run_suites(cfg);
  write_atomic(cfg.out, to_json(run));
  if (cfg.csv) write_atomic(*cfg.csv, to_csv(run));
  std::cout << to_text(run);
  for (const auto& s : run.suites) {
    if (!s.error.empty()) std::cerr << "crflow: suite " << s.suite << ": " << s.error << "\n";
  }
  if (run.has_error()) return kExitUsage;
  return run.pass() ? kExitPass : kExitFail;
}

int cmd_sample(const ModelSource& src, const SampleSpec& spec, const std::string& out) {
  const ModelConfig cfg = src.load();
  ScopedPrecision scope(cfg.precision_bits);
  const int digits = digits_for(cfg.precision_bits);
  std::vector<SurfacePoint> pts;
  if (cfg.kind == ModelConfig::Kind::kRadial) {
    pts = sample_surface(build_radial(cfg), spec);
  } else {
    pts = sample_surface(build_model(cfg), spec);
  }
  std::string text = "re_z1,im_z1,re_z2,im_z2,rho_residual\n";
  for (const auto& p : pts) text += point_row(p.z1, p.z2, digits) + "," + sci(p.rho_residual) + "\n";
  write_atomic(out, text);
  return kExitPass;
}

int cmd_trace(const ModelSource& src, const std::string& start, const std::string& z2_text,
              const std::string& t0_text, const std::string& times_text, const std::string& out) {
  const ModelConfig cfg = src.load();
  ScopedPrecision scope(cfg.precision_bits);
  const ModelSurface m = build_model(cfg);
  const int digits = digits_for(cfg.precision_bits);

  Complex z1, z2;
  if (!start.empty()) {
    const auto parts = split(start, ',');
    if (parts.size() != 4) throw ConfigError("start: expected re_z1,im_z1,re_z2,im_z2");
    z1 = Complex(parse_real(parts[0], "start"), parse_real(parts[1], "start"));
    z2 = Complex(parse_real(parts[2], "start"), parse_real(parts[3], "start"));
    const double res = abs(eval_rho(m, z1, z2)).to_double();
    if (!(res <= point_tolerance(m.precision()))) {
      throw ConfigError("start point is not on the surface (|rho| = " + sci(res) + ")");
    }
  } else {
    const auto parts = split(z2_text, ',');
    if (parts.size() != 2) throw ConfigError("z2: expected re,im");
    z2 = Complex(parse_real(parts[0], "z2"), parse_real(parts[1], "z2"));
    z1 = surface_z1(m, z2, parse_real(t0_text, "t0"));
  }

  const FlowMap flow = flow_of(m);
  std::string text = "t,re_z1,im_z1,re_z2,im_z2,rho_residual\n";
  std::optional<Real> last_good;
  for (const auto& t : parse_times(times_text)) {
    try {
      const Point2 p = flow_closed(flow, t, z1, z2);
      const double res = abs(eval_rho(m, p.z1, p.z2)).to_double();
      text += t.to_string(17) + "," + point_row(p.z1, p.z2, digits) + "," + sci(res) + "\n";
      last_good = t;
    } catch (const DomainError& e) {
      write_atomic(out, text);
      std::cerr << "crflow: trace truncated at t=" << t.to_string(17) << " (" << e.what() << ")";
      if (last_good) std::cerr << "; last good t=" << last_good->to_string(17);
      std::cerr << "\n";
      return kExitFail;
    }
  }
  write_atomic(out, text);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for infinite-type model hypersurfaces"};
  app.require_subcommand(1);

  std::optional<int> bits;
  std::optional<std::uint64_t> seed;
  std::string out;

  auto* check = app.add_subcommand("check", "run check suites and write a JSON report");
  std::string config_path, suites;
  bool csv = false;
  check->add_option("--config", config_path, "suite config JSON")->required();
  check->add_option("--suite", suites, "comma-separated suite names or 'all'");
  check->add_option("--precision-bits", bits, "working precision in bits");
  check->add_option("--seed", seed, "grid seed");
  check->add_option("--out", out, "JSON report path");
  check->add_flag("--csv", csv, "also write per-point residuals as CSV");

  ModelSource src;
  SampleSpec spec;
  auto* sample = app.add_subcommand("sample", "write surface points as CSV");
  sample->add_option("--model", src.model, "model JSON");
  sample->add_option("--config", src.config, "suite config whose model is used");
  sample->add_option("--precision-bits", src.bits, "working precision in bits");
  sample->add_option("--n", spec.n, "number of points");
  sample->add_option("--r-min", spec.r_min, "inner radius of the |z2| annulus");
  sample->add_option("--r-max", spec.r_max, "outer radius of the |z2| annulus");
  sample->add_option("--t-min", spec.t_min, "lower bound of Im z1");
  sample->add_option("--t-max", spec.t_max, "upper bound of Im z1");
  sample->add_option("--seed", spec.seed, "sampling seed");
  sample->add_option("--out", out, "CSV path")->required();

  std::string start, z2_text = "0.05,0", t0_text = "0", times_text = "0:1:0.1";
  auto* trace = app.add_subcommand("trace", "write a flow orbit as CSV");
  trace->add_option("--model", src.model, "model JSON");
  trace->add_option("--config", src.config, "suite config whose model is used");
  trace->add_option("--precision-bits", src.bits, "working precision in bits");
  trace->add_option("--start", start, "start point re_z1,im_z1,re_z2,im_z2 (on the surface)");
  trace->add_option("--z2", z2_text, "start z2 as re,im; z1 is put on the surface")
      ->capture_default_str();
  trace->add_option("--t0", t0_text, "Im z1 of the start point")->capture_default_str();
  trace->add_option("--times", times_text, "a,b,c or start:stop:step")->capture_default_str();
  trace->add_option("--out", out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*check) return cmd_check(config_path, suites, bits, seed, out, csv);
    if (bits) Precision{*bits}.validate();
    if (src.bits) Precision{*src.bits}.validate();
    if (*sample) return cmd_sample(src, spec, out);
    return cmd_trace(src, start, z2_text, t0_text, times_text, out);
  } catch (const std::exception& e) {
    // config, usage, guard and surface-solve errors
    std::cerr << "crflow: " << e.what() << "\n";
    return kExitUsage;
  }
}
