#pragma once

#include <string>
#include <vector>

#include "hetca/config.hpp"
#include "hetca/sim/simulator.hpp"

namespace hetca {

inline constexpr const char* kToolVersion = "1.0.0";

struct SweepSpec {
  std::string parameter;          // override path, e.g. "tier[2].bias_db"
  std::vector<double> values;     // nonempty, swept in ascending order
  bool analytic = true;
  bool monte_carlo = false;
  std::vector<std::string> deployments;  // shorthand strings; empty = keep config's
};

struct SweepResult {
  std::string csv;       // full file contents, '\n' line endings
  std::string manifest;  // JSON run manifest
};

/// Runs the sweep; rows may be computed on `threads` workers but the
/// output is byte-identical at any thread count.
SweepResult run_sweep(const NetworkConfig& base_config, const SweepSpec& spec,
                      const sim::SimParams& sim_params, int threads = 1);

}  // namespace hetca
