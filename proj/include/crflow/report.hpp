#pragma once

// Report serialization: JSON for machines, aligned columns for people,
// optional per-point CSV. All files are written atomically.

#include <filesystem>
#include <string>
#include <vector>

#include "crflow/checks.hpp"

namespace crflow {

struct SuiteResult {
  std::string suite;
  std::vector<CheckReport> reports;
  /// Set when the suite could not run (guard or config error).
  std::string error;

  bool pass() const;
};

struct RunSummary {
  std::string model;
  int precision_bits = kDefaultBits;
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool pass() const;
  bool has_error() const;
};

/// Deterministic JSON (keys in insertion order, no timestamps).
std::string to_json(const RunSummary& run);
std::string to_text(const RunSummary& run);
/// suite,check,index,label,residual
std::string to_csv(const RunSummary& run);

/// Writes via a temporary sibling file and rename. Throws std::runtime_error.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace crflow
