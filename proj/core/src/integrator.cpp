#include "lohe/integrator.hpp"

#include <cmath>

namespace lohe {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigurationError("integrator: dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ConfigurationError("integrator: t_end must be > 0");
  if (dt > t_end) throw ConfigurationError("integrator: dt must not exceed t_end");
  if (sample_every == 0) throw ConfigurationError("integrator: sample_every must be >= 1");
}

std::size_t IntegratorConfig::steps() const {
  return std::size_t(std::llround(t_end / dt));
}

void Rk4Stepper::step(const FlowFn& f, double t, double dt, std::span<cplx> y) {
  const std::size_t n = y.size();
  f(t, y, k1_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
  f(t + 0.5 * dt, tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
  f(t + 0.5 * dt, tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
  f(t + dt, tmp_, k4_);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    y[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
}

void normalize_blocks(std::span<cplx> y, std::size_t block_size) {
  const std::size_t b = block_size == 0 ? y.size() : block_size;
  if (b == 0 || y.size() % b != 0)
    throw DimensionError("normalize_blocks: state size is not a multiple of block size");
  for (std::size_t off = 0; off < y.size(); off += b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b; ++i) s += std::norm(y[off + i]);
    s = std::sqrt(s);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < b; ++i) y[off + i] /= s;
  }
}

void require_finite(std::span<const cplx> y, double t) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag()))
      throw DivergenceError(t, i,
                            "non-finite state at t=" + std::to_string(t) +
                                ", index " + std::to_string(i));
}

TimeSeries rk4_integrate(const FlowFn& f, CVector& state, const IntegratorConfig& cfg,
                         const std::vector<Observer>& observers, const Projection& projection) {
  cfg.validate();
  TimeSeries ts;
  auto sample = [&](double t) {
    TimeSeries::Sample s;
    for (const auto& obs : observers) obs(t, state, s);
    ts.push(t, s);
  };
  const std::size_t steps = cfg.steps();
  Rk4Stepper stepper(state.size());
  require_finite(state, 0.0);
  sample(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = double(k - 1) * cfg.dt;
    stepper.step(f, t0, cfg.dt, state);
    const double t = double(k) * cfg.dt;
    if (cfg.reproject) {
      if (projection)
        projection(state);
      else
        normalize_blocks(state, cfg.block_size);
    }
    require_finite(state, t);
    if (k % cfg.sample_every == 0 || k == steps) sample(t);
  }
  return ts;
}

}  // namespace lohe
