#pragma once

// The named check suites run by `crflow check`.

#include <string>

#include "crflow/config.hpp"
#include "crflow/kernels.hpp"
#include "crflow/report.hpp"

namespace crflow {

/// Loads the model(s) referenced by `cfg` and runs every selected suite in
/// order. Model loading errors throw ConfigError; guard or domain errors
/// inside a suite are recorded in SuiteResult::error.
RunSummary run_suites(const SuiteConfig& cfg, Exec exec = Exec::kParallel);

/// Runs one suite against already-built surfaces.
SuiteResult run_suite(const std::string& name, const ModelConfig& model,
                      const ModelConfig& radial, const SuiteConfig& cfg, Exec exec);

}  // namespace crflow
