// Fixed-step classical RK4 on a flat complex state, with optional per-block
// renormalization and sampled observers.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lohe/timeseries.hpp"
#include "lohe/types.hpp"

namespace lohe {

// Non-finite state encountered during time stepping.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double time, std::size_t index, const std::string& what)
      : std::runtime_error(what), time_(time), index_(index) {}
  double time() const noexcept { return time_; }
  std::size_t index() const noexcept { return index_; }

 private:
  double time_;
  std::size_t index_;
};

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  bool reproject = false;        // scale each block to unit norm after every step
  std::size_t block_size = 0;    // block length for reprojection; 0 = whole state
  std::size_t sample_every = 1;  // observer cadence in steps

  void validate() const;
  std::size_t steps() const;
};

// dy = f(t, y).
using FlowFn = std::function<void(double t, std::span<const cplx> y, std::span<cplx> dy)>;
// Appends channel values for the state y at time t.
using Observer = std::function<void(double t, std::span<const cplx> y, TimeSeries::Sample& out)>;
// Optional replacement for the default block renormalization.
using Projection = std::function<void(std::span<cplx> y)>;

class Rk4Stepper {
 public:
  explicit Rk4Stepper(std::size_t n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {}
  void step(const FlowFn& f, double t, double dt, std::span<cplx> y);

 private:
  CVector k1_, k2_, k3_, k4_, tmp_;
};

void normalize_blocks(std::span<cplx> y, std::size_t block_size);

// Throws DivergenceError on the first non-finite entry.
void require_finite(std::span<const cplx> y, double t);

// Integrates state in place from t = 0 to cfg.t_end. Observers are sampled at
// step 0, every sample_every steps, and at the final step.
TimeSeries rk4_integrate(const FlowFn& f, CVector& state, const IntegratorConfig& cfg,
                         const std::vector<Observer>& observers = {},
                         const Projection& projection = {});

}  // namespace lohe
