// Builds runnable problems from validated configs: flat-state ODE flows with
// their diagnostic channels, and SL systems with wave-field channels.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lohe/experiments/config.hpp"
#include "lohe/integrator.hpp"
#include "lohe/sl_system.hpp"
#include "lohe/timeseries.hpp"

namespace lohe::experiments {

struct OdeChannel {
  std::string name;
  std::function<double(double t, std::span<const cplx> y)> eval;
};

struct OdeProblem {
  CVector state;          // flat initial state (model layout, see README)
  FlowFn flow;
  Projection projection;  // applied after each step when reprojecting
  std::size_t count = 0;
  std::size_t block = 0;  // per-oscillator block of the primary model
  std::vector<OdeChannel> channels;
};

// Default channel list of a config's model.
std::vector<std::string> default_channels(const ExperimentConfig& cfg);

// Throws ConfigError for unknown channels or a missing seed.
OdeProblem build_ode_problem(const ExperimentConfig& cfg);

SLSystem build_sl_system(const ExperimentConfig& cfg);

// Wave-field channels; evaluate() computes the correlation matrix at most once
// per call. h_gap is min_{i != j} |1 - h_ij|. crossratio_<ijkl> reports
// |R(t) - R(0)| with R(0) taken at the first evaluation.
class WaveChannels {
 public:
  // Throws ConfigError for unknown channel names.
  WaveChannels(std::vector<std::string> names, std::size_t count, std::size_t dim);
  ~WaveChannels();
  WaveChannels(WaveChannels&&) noexcept;

  const std::vector<std::string>& names() const noexcept { return names_; }
  TimeSeries::Sample evaluate(const SLSystem& sys);

 private:
  struct Impl;
  std::vector<std::string> names_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lohe::experiments
