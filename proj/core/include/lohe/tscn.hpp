// Time-splitting Crank-Nicolson Fourier pseudospectral (TSCN-FP) scheme.
// One step of length dt is the Strang composition
//   kinetic(dt/2) -> phase(dt/2) -> Lohe Crank-Nicolson(dt) -> phase(dt/2) -> kinetic(dt/2).

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lohe/fft.hpp"
#include "lohe/sl_system.hpp"

namespace lohe {

struct CNOptions {
  double tolerance = 1e-12;  // discrete L2 change of each component between iterates
  int max_iterations = 100;
  double singular_mass = 1e-8;  // smallest admissible <psi_j, psi_j>_dx at the midpoint
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double residual, int iterations)
      : std::runtime_error("Crank-Nicolson fixed point did not converge: residual " +
                           std::to_string(residual) + " after " + std::to_string(iterations) +
                           " iterations"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TscnSolver {
 public:
  TscnSolver(SLSystem system, double dt, CNOptions options = {});

  const SLSystem& system() const noexcept { return sys_; }
  SLSystem& system() noexcept { return sys_; }
  double dt() const noexcept { return dt_; }
  double time() const noexcept { return time_; }
  int last_iterations() const noexcept { return last_iterations_; }
  double last_residual() const noexcept { return last_residual_; }
  SpectralTransform& transform() noexcept { return *fft_; }

  // Sub-steps on all components (exposed for tests and benchmarks).
  void kinetic_step(double tau);
  void phase_step(double tau);
  void lohe_cn_step(double tau);

  // One full scheme step.
  void step();
  // n steps with adjacent kinetic half-steps fused into full steps.
  void evolve(std::size_t n);

 private:
  const std::vector<cplx>& kinetic_multiplier(double tau);
  const std::vector<cplx>& potential_phase(std::size_t j, double tau);

  SLSystem sys_;
  double dt_;
  CNOptions opt_;
  double time_ = 0.0;
  int last_iterations_ = 0;
  double last_residual_ = 0.0;
  std::unique_ptr<SpectralTransform> fft_;

  // Cached kinetic multipliers keyed by tau.
  std::vector<std::pair<double, std::vector<cplx>>> kinetic_cache_;
  // Cached exp(-i tau V_j) keyed by (j, tau).
  std::vector<std::pair<double, std::vector<std::vector<cplx>>>> potential_cache_;
  // Groups of components sharing (V_j, beta row j); the nonlinear phase is computed once per group.
  std::vector<std::vector<std::size_t>> phase_groups_;
  std::vector<double> density_;
};

// Stateless single-field/sub-step forms.
WaveField kinetic_half_step(const WaveField& psi, double dt, double kinetic = 0.5);
SLSystem phase_step(const SLSystem& sys, double dt);
SLSystem lohe_cn_step(const SLSystem& sys, double dt, CNOptions options = {});
SLSystem tscn_fp_step(const SLSystem& sys, double dt, CNOptions options = {});

}  // namespace lohe
