// Runs a validated config: ODE models with RK4, wave models with the TSCN-FP
// scheme. Writes <out>/<stem>.csv, <out>/<stem>.json (manifest) and one CSV
// per requested density snapshot.

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lohe/experiments/config.hpp"
#include "lohe/sl_system.hpp"
#include "lohe/timeseries.hpp"

namespace lohe::experiments {

struct RunOptions {
  std::string out_dir = ".";
  bool write_files = true;
};

struct RunResult {
  std::string name;
  TimeSeries series;
  bool diverged = false;
  std::string message;  // divergence description
  double abort_time = std::numeric_limits<double>::quiet_NaN();
  std::size_t abort_index = 0;
  std::string csv_path, manifest_path;
  std::vector<std::string> snapshot_paths;
  CVector final_state;                // ODE models
  std::optional<SLSystem> final_system;  // wave models
};

// Divergence is reported in the result (partial series kept), not thrown.
// Throws ConfigError for config problems found while building the problem.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// Density snapshot: header "d,M,a,b,t,component", one values row, then |psi|^2
// as M rows (1D: one row of M values; 2D: M rows of M values, row = first axis).
void write_density_snapshot(const std::string& path, const Grid& grid, double t,
                            std::size_t component, const CVector& field);

}  // namespace lohe::experiments
