// Exponential decay-rate estimation by least squares on log(series).

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace lohe {

struct FitWindow {
  // Only samples with value in [value_lo, value_hi] and time in [t_min, t_max] are used.
  double value_lo = 1e-8;
  double value_hi = 1e-2;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
};

struct DecayFit {
  double rate = 0.0;       // -slope of log(value) against t
  double intercept = 0.0;  // log(value) at t = 0
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Throws std::invalid_argument if fewer than 3 samples fall in the window or a
// windowed sample is not positive.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        const FitWindow& window = {});

}  // namespace lohe
