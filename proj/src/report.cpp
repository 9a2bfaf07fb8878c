#include "crflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace crflow {

using ojson = nlohmann::ordered_json;

bool SuiteResult::pass() const {
  if (!error.empty() || reports.empty()) return false;
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

bool RunSummary::pass() const {
  for (const auto& s : suites) {
    if (!s.pass()) return false;
  }
  return !suites.empty();
}

bool RunSummary::has_error() const {
  for (const auto& s : suites) {
    if (!s.error.empty()) return true;
  }
  return false;
}

namespace {

// JSON has no inf/nan; keep them readable instead of null.
ojson number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const RunSummary& run) {
  ojson root;
  root["model"] = run.model;
  root["precision_bits"] = run.precision_bits;
  root["seed"] = run.seed;
  root["pass"] = run.pass();
  ojson suites = ojson::array();
  for (const auto& s : run.suites) {
    ojson js;
    js["suite"] = s.suite;
    js["pass"] = s.pass();
    if (!s.error.empty()) js["error"] = s.error;
    ojson reports = ojson::array();
    for (const auto& r : s.reports) {
      ojson jr;
      jr["check_name"] = r.check_name;
      jr["mode"] = mode_name(r.mode);
      jr["criterion"] = r.criterion;
      jr["points_evaluated"] = r.points_evaluated;
      jr["max_residual"] = number(r.max_residual);
      jr["mean_residual"] = number(r.mean_residual);
      jr["tolerance_used"] = number(r.tolerance_used);
      jr["pass"] = r.pass;
      ojson metrics = ojson::object();
      for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
      jr["metrics"] = metrics;
      reports.push_back(jr);
    }
    js["reports"] = reports;
    suites.push_back(js);
  }
  root["suites"] = suites;
  return root.dump(2) + "\n";
}

std::string to_text(const RunSummary& run) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-34s %-12s %6s %12s %12s  %s\n", "suite", "check", "mode",
                "points", "max", "tolerance", "result");
  os << buf;
  for (const auto& s : run.suites) {
    if (!s.error.empty()) {
      std::snprintf(buf, sizeof buf, "%-14s %-34s %-12s %6s %12s %12s  ERROR: %s\n",
                    s.suite.c_str(), "-", "-", "-", "-", "-", s.error.c_str());
      os << buf;
      continue;
    }
    for (const auto& r : s.reports) {
      std::snprintf(buf, sizeof buf, "%-14s %-34s %-12s %6zu %12s %12s  %s\n", s.suite.c_str(),
                    r.check_name.c_str(), mode_name(r.mode), r.points_evaluated,
                    sci(r.max_residual).c_str(), sci(r.tolerance_used).c_str(),
                    r.pass ? "pass" : "FAIL");
      os << buf;
    }
  }
  os << (run.pass() ? "all suites passed" : "some suites failed") << "\n";
  return os.str();
}

std::string to_csv(const RunSummary& run) {
  std::ostringstream os;
  os << "suite,check,index,label,residual\n";
  char buf[32];
  for (const auto& s : run.suites) {
    for (const auto& r : s.reports) {
      for (const auto& d : r.details) {
        std::snprintf(buf, sizeof buf, "%.17g", d.residual);
        os << s.suite << ',' << r.check_name << ',' << d.index << ',' << csv_field(d.label) << ','
           << buf << '\n';
      }
    }
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace crflow
