#pragma once

// JSON model files and suite configs.
//
// Model file:
//   {"kind": "model",                      // or "radial"
//    "alpha": 1,                           // number or decimal string; exact 0 selects the alpha = 0 branch
//    "a": [[1, 0]],                        // [re, im] of a_1, a_2, ...
//    "p": {"family": "inverse_power", "c": 1, "s": 1,
//          "poly": [...], "first_degree": 0},   // optional correction
//    "q": {"poly": [...], "first_degree": 1},   // optional, q(0) = 0
//    "Q": [[i, j, c], ...],                // radial only: sum c r^i t^j
//    "eps0": 0.15, "delta0": 0.3, "precision_bits": 192}
//
// Numbers are re-read from their shortest decimal form at full working
// precision, so 0.15 means the decimal 0.15 and not the nearest double.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crflow/mp.hpp"
#include "crflow/profile.hpp"
#include "crflow/series.hpp"
#include "crflow/surface.hpp"

namespace crflow {

struct ModelConfig {
  enum class Kind { kModel, kRadial };

  Kind kind = Kind::kModel;
  std::vector<Complex> a;
  Real alpha;
  bool alpha_zero = true;
  RadialProfile profile = RadialProfile::inverse_power(Real(1), Real(1));
  BivariatePoly q_fn;
  Real eps0;
  Real delta0;
  int precision_bits = kDefaultBits;

  Alpha alpha_param() const;
};

/// Parses model JSON text. Throws ConfigError with a diagnostic.
ModelConfig parse_model(const std::string& text, int bits);
/// Reads and parses a model file; `bits` < 0 uses the file's precision_bits.
ModelConfig load_model(const std::filesystem::path& path, int bits = -1);

/// a(z) = z, p = -1/r, q = 0, eps0 = 0.15, delta0 = 0.3.
ModelConfig default_model(double alpha, int bits = kDefaultBits);
/// p = -1/r, Q = r^2 + t^2, eps0 = 0.15, delta0 = 0.3.
ModelConfig default_radial_model(int bits = kDefaultBits);

/// Throws ConfigError unless cfg.kind == kModel.
ModelSurface build_model(const ModelConfig& cfg);
/// Throws ConfigError unless cfg.kind == kRadial.
RadialSurface build_radial(const ModelConfig& cfg);

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "tangency", "invariance", "group_law", "generator", "identities",   "vanishing",
      "dilation", "expansion",  "perturbation", "recover", "radial", "alpha_limit"};
  return names;
}

struct SuiteConfig {
  std::filesystem::path model_path;
  std::optional<std::filesystem::path> radial_model_path;
  std::vector<std::string> suites;
  SampleSpec grid;
  /// Overrides the model file's precision_bits when set.
  std::optional<int> precision_bits;
  /// Field/flow alpha used by the tangency and invariance suites when it
  /// should differ from the model's (negative controls).
  std::optional<std::string> field_alpha;
  std::filesystem::path out = "report.json";
  std::optional<std::filesystem::path> csv;
};

/// Parses a suite config; relative model paths resolve against `base_dir`.
/// "suites": ["all"] expands to every suite. Throws ConfigError.
SuiteConfig parse_suite_config(const std::string& text, const std::filesystem::path& base_dir);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// Splits "a,b,c" and validates every name; "all" expands.
std::vector<std::string> parse_suite_list(const std::string& csv);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace crflow
