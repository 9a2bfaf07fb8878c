#include "crflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crflow/errors.hpp"

namespace crflow {

using nlohmann::json;

namespace {

Real real_of(const json& j, const std::string& what) {
  try {
    if (j.is_string()) return Real::from_string(j.get<std::string>());
    if (j.is_number()) return Real::from_string(j.dump());
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number");
  }
  throw ConfigError(what + ": expected number or decimal string");
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(ctx + ": missing \"" + key + "\"");
  return obj.at(key);
}

RealPoly poly_of(const json& obj, int default_first, const std::string& ctx) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected object");
  if (!obj.contains("poly")) return {};
  const json& list = obj.at("poly");
  if (!list.is_array()) throw ConfigError(ctx + ".poly: expected array");
  std::vector<Real> coeffs;
  for (std::size_t k = 0; k < list.size(); ++k) {
    coeffs.push_back(real_of(list[k], ctx + ".poly[" + std::to_string(k) + "]"));
  }
  int first = default_first;
  if (obj.contains("first_degree")) first = obj.at("first_degree").get<int>();
  return RealPoly(std::move(coeffs), first);
}

int bits_of(const json& j, int fallback) {
  if (!j.contains("precision_bits")) return fallback;
  if (!j.at("precision_bits").is_number_integer()) {
    throw ConfigError("precision_bits: expected integer");
  }
  return j.at("precision_bits").get<int>();
}

}  // namespace

Alpha ModelConfig::alpha_param() const {
  return alpha_zero ? Alpha::zero() : Alpha::nonzero(alpha);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ModelConfig parse_model(const std::string& text, int bits) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("model: expected a JSON object");
  if (bits < 0) bits = bits_of(j, kDefaultBits);
  try {
    Precision{bits}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  ScopedPrecision scope(bits);

  ModelConfig cfg;
  cfg.precision_bits = bits;
  const std::string kind = j.value("kind", std::string("model"));
  if (kind == "radial") {
    cfg.kind = ModelConfig::Kind::kRadial;
  } else if (kind != "model") {
    throw ConfigError("model: unknown kind \"" + kind + "\"");
  }

  try {
    const json& p = require(j, "p", "model");
    const std::string family = p.value("family", std::string("inverse_power"));
    if (family != "inverse_power") throw ConfigError("p: unsupported family \"" + family + "\"");
    RealPoly q;
    if (j.contains("q")) q = poly_of(j.at("q"), 1, "q");
    cfg.profile = RadialProfile::inverse_power(real_of(require(p, "c", "p"), "p.c"),
                                               real_of(require(p, "s", "p"), "p.s"),
                                               poly_of(p, 0, "p"), std::move(q));
    cfg.eps0 = real_of(require(j, "eps0", "model"), "eps0");
    cfg.delta0 = real_of(require(j, "delta0", "model"), "delta0");

    if (cfg.kind == ModelConfig::Kind::kModel) {
      const json& alpha = require(j, "alpha", "model");
      cfg.alpha = real_of(alpha, "alpha");
      cfg.alpha_zero = cfg.alpha.is_zero();
      const json& a = require(j, "a", "model");
      if (!a.is_array() || a.empty()) throw ConfigError("a: expected nonempty array");
      for (std::size_t k = 0; k < a.size(); ++k) {
        const std::string ctx = "a[" + std::to_string(k) + "]";
        if (!a[k].is_array() || a[k].size() != 2) throw ConfigError(ctx + ": expected [re, im]");
        cfg.a.emplace_back(real_of(a[k][0], ctx), real_of(a[k][1], ctx));
      }
    } else {
      const json& terms = require(j, "Q", "model");
      if (!terms.is_array()) throw ConfigError("Q: expected array of [i, j, c]");
      std::vector<Monomial2> mono;
      for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) throw ConfigError("Q: expected [i, j, c]");
        mono.push_back({t[0].get<int>(), t[1].get<int>(), real_of(t[2], "Q coefficient")});
      }
      cfg.q_fn = BivariatePoly(std::move(mono));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return cfg;
}

ModelConfig load_model(const std::filesystem::path& path, int bits) {
  return parse_model(read_text_file(path), bits);
}

ModelConfig default_model(double alpha, int bits) {
  ScopedPrecision scope(bits);
  ModelConfig cfg;
  cfg.a = {Complex(1)};
  cfg.alpha = Real(alpha);
  cfg.alpha_zero = alpha == 0.0;
  cfg.profile = RadialProfile::inverse_power(Real(1), Real(1));
  cfg.eps0 = Real::from_string("0.15");
  cfg.delta0 = Real::from_string("0.3");
  cfg.precision_bits = bits;
  return cfg;
}

ModelConfig default_radial_model(int bits) {
  ModelConfig cfg = default_model(0.0, bits);
  ScopedPrecision scope(bits);
  cfg.kind = ModelConfig::Kind::kRadial;
  cfg.a.clear();
  cfg.q_fn = BivariatePoly({{2, 0, Real(1)}, {0, 2, Real(1)}});
  return cfg;
}

ModelSurface build_model(const ModelConfig& cfg) {
  if (cfg.kind != ModelConfig::Kind::kModel) throw ConfigError("expected a model, got a radial surface");
  ScopedPrecision scope(cfg.precision_bits);
  try {
    return ModelSurface::create(HoloSeries(cfg.a), cfg.alpha_param(), cfg.profile, cfg.eps0,
                                cfg.delta0, Precision{cfg.precision_bits});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

RadialSurface build_radial(const ModelConfig& cfg) {
  if (cfg.kind != ModelConfig::Kind::kRadial) throw ConfigError("expected a radial surface");
  ScopedPrecision scope(cfg.precision_bits);
  try {
    return RadialSurface(cfg.profile, cfg.q_fn, cfg.eps0, cfg.delta0,
                         Precision{cfg.precision_bits});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("radial model: ") + e.what());
  }
}

std::vector<std::string> parse_suite_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    if (name == "all") {
      out = all_suites();
      return out;
    }
    const auto& known = all_suites();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown suite \"" + name + "\"");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  if (out.empty()) throw ConfigError("suite selection is empty");
  return out;
}

SuiteConfig parse_suite_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  SuiteConfig cfg;
  try {
    cfg.model_path = base_dir / require(j, "model", "config").get<std::string>();
    if (j.contains("radial_model")) {
      cfg.radial_model_path = base_dir / j.at("radial_model").get<std::string>();
    }
    std::string suites = "all";
    if (j.contains("suites")) {
      const json& s = j.at("suites");
      if (!s.is_array()) throw ConfigError("suites: expected array");
      suites.clear();
      for (const auto& name : s) suites += name.get<std::string>() + ",";
    }
    cfg.suites = parse_suite_list(suites);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      cfg.grid.n = g.value("n", cfg.grid.n);
      cfg.grid.r_min = g.value("r_min", cfg.grid.r_min);
      cfg.grid.r_max = g.value("r_max", cfg.grid.r_max);
      cfg.grid.t_min = g.value("t_min", cfg.grid.t_min);
      cfg.grid.t_max = g.value("t_max", cfg.grid.t_max);
      cfg.grid.seed = g.value("seed", cfg.grid.seed);
    }
    if (j.contains("precision_bits")) cfg.precision_bits = bits_of(j, kDefaultBits);
    if (j.contains("field_alpha")) {
      const json& fa = j.at("field_alpha");
      cfg.field_alpha = fa.is_string() ? fa.get<std::string>() : fa.dump();
    }
    if (j.contains("output")) {
      const json& o = j.at("output");
      if (o.contains("json")) cfg.out = o.at("json").get<std::string>();
      if (o.contains("csv") && !o.at("csv").is_null()) cfg.csv = o.at("csv").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  return parse_suite_config(read_text_file(path), path.parent_path());
}

}  // namespace crflow
