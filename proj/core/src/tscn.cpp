#include "lohe/tscn.hpp"

#include <cmath>

namespace lohe {

namespace {

bool same_potential(const SLSystem& s, std::size_t i, std::size_t j) {
  if (s.potentials.empty()) return true;
  return s.potentials[i] == s.potentials[j];
}

bool same_beta_row(const SLSystem& s, std::size_t i, std::size_t j) {
  if (!s.beta.size()) return true;
  return s.beta.row(Eigen::Index(i)) == s.beta.row(Eigen::Index(j));
}

}  // namespace

TscnSolver::TscnSolver(SLSystem system, double dt, CNOptions options)
    : sys_(std::move(system)), dt_(dt), opt_(options) {
  sys_.validate();
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw ConfigurationError("TSCN: dt must be > 0");
  fft_ = std::make_unique<SpectralTransform>(sys_.grid);
  const std::size_t n = sys_.size();
  for (std::size_t j = 0; j < n; ++j) {
    bool placed = false;
    for (auto& g : phase_groups_)
      if (same_potential(sys_, g[0], j) && same_beta_row(sys_, g[0], j)) {
        g.push_back(j);
        placed = true;
        break;
      }
    if (!placed) phase_groups_.push_back({j});
  }
  density_.assign(sys_.grid.size(), 0.0);
}

const std::vector<cplx>& TscnSolver::kinetic_multiplier(double tau) {
  for (const auto& [t, mult] : kinetic_cache_)
    if (t == tau) return mult;
  const auto& mu2 = fft_->mu_squared();
  std::vector<cplx> mult(mu2.size());
  for (std::size_t i = 0; i < mu2.size(); ++i)
    mult[i] = std::polar(1.0, -tau * sys_.kinetic * mu2[i]);
  kinetic_cache_.emplace_back(tau, fft_->prepare_multiplier(mult));
  return kinetic_cache_.back().second;
}

const std::vector<cplx>& TscnSolver::potential_phase(std::size_t j, double tau) {
  static const std::vector<cplx> empty;
  if (sys_.potentials.empty() || sys_.potentials[j].empty()) return empty;
  for (const auto& [t, phases] : potential_cache_)
    if (t == tau) return phases[j];
  std::vector<std::vector<cplx>> phases(sys_.size());
  for (std::size_t k = 0; k < sys_.size(); ++k) {
    if (sys_.potentials[k].empty()) continue;
    phases[k].resize(sys_.grid.size());
    for (std::size_t i = 0; i < sys_.grid.size(); ++i)
      phases[k][i] = std::polar(1.0, -tau * sys_.potentials[k][i]);
  }
  potential_cache_.emplace_back(tau, std::move(phases));
  return potential_cache_.back().second[j];
}

// Exact flow of i psi_t = -c Lap psi over tau: mode p picks up exp(-i tau c mu_p^2).
void TscnSolver::kinetic_step(double tau) {
  const auto& mult = kinetic_multiplier(tau);
  for (auto& f : sys_.fields) fft_->apply_prepared(f, mult);
}

// Exact flow of i psi_t = (V_j + sum_k beta_jk |psi_k|^2) psi_j over tau; the
// moduli are frozen, so every component sees the step-entry densities.
void TscnSolver::phase_step(double tau) {
  const std::size_t m = sys_.grid.size();
  const bool nonlinear = sys_.beta.size() && !sys_.beta.isZero(0.0);
  // Densities are read before any component is modified.
  std::vector<std::vector<double>> rho;
  if (nonlinear) {
    rho.assign(sys_.size(), std::vector<double>(m));
    for (std::size_t k = 0; k < sys_.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) rho[k][i] = std::norm(sys_.fields[k][i]);
  }
  std::vector<cplx> phase(m);
  for (const auto& group : phase_groups_) {
    const std::size_t j0 = group[0];
    const auto& vphase = potential_phase(j0, tau);
    bool has_nl = false;
    if (nonlinear) {
      std::fill(density_.begin(), density_.end(), 0.0);
      for (std::size_t k = 0; k < sys_.size(); ++k) {
        const double bjk = sys_.b(j0, k);
        if (bjk == 0.0) continue;
        has_nl = true;
        for (std::size_t i = 0; i < m; ++i) density_[i] += bjk * rho[k][i];
      }
    }
    if (has_nl) {
      const bool has_v = !sys_.potentials.empty() && !sys_.potentials[j0].empty();
      for (std::size_t i = 0; i < m; ++i)
        phase[i] = std::polar(1.0, -tau * (density_[i] + (has_v ? sys_.potentials[j0][i] : 0.0)));
    } else if (!vphase.empty()) {
      std::copy(vphase.begin(), vphase.end(), phase.begin());
    } else {
      continue;
    }
    for (std::size_t j : group) {
      auto& f = sys_.fields[j];
      for (std::size_t i = 0; i < m; ++i) f[i] *= phase[i];
    }
  }
}

// Implicit midpoint for psi_j' = (kappa/2N) sum_k a_jk (psi_k - <psi_j,psi_k>/<psi_j,psi_j> psi_j).
// With w_j = sum_k a_jk m_k the bracket equals w_j - <m_j,w_j>/<m_j,m_j> m_j, so every
// iterate stays in the span of the step-entry fields: next_j = sum_k X_jk psi_k. The
// fixed-point iteration therefore runs on the N x N coefficients X, with inner
// products taken through the Gram matrix G_kl = <psi_k,psi_l>_dx; the residual is
// the exact discrete L2 norm of the change of each component.
void TscnSolver::lohe_cn_step(double tau) {
  last_iterations_ = 0;
  last_residual_ = 0.0;
  if (sys_.kappa == 0.0) return;
  const std::size_t n = sys_.size(), m = sys_.grid.size();
  const auto N = Eigen::Index(n);
  const double c = tau * sys_.kappa / (2.0 * double(n));
  auto& psi = sys_.fields;

  // G_kl = dx sum psi_k conj(psi_l), one sweep over the grid.
  CMatrix G = CMatrix::Zero(N, N);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx pk = psi[k][i];
      for (std::size_t l = k; l < n; ++l) G(Eigen::Index(k), Eigen::Index(l)) += pk * std::conj(psi[l][i]);
    }
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index l = 0; l < k; ++l) G(k, l) = std::conj(G(l, k));
  G *= sys_.grid.cell();

  CMatrix A(N, N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index k = 0; k < N; ++k) A(j, k) = sys_.a(std::size_t(j), std::size_t(k));

  const CMatrix I = CMatrix::Identity(N, N);
  CMatrix X = I, Mc(N, N), W(N, N), Xn(N, N);
  double residual = 0.0;
  int it = 0;
  for (; it < opt_.max_iterations; ++it) {
    Mc = 0.5 * (I + X);
    W = A * Mc;
    const CMatrix MG = Mc * G;
    residual = 0.0;
    for (Eigen::Index j = 0; j < N; ++j) {
      const double gjj = (MG.row(j) * Mc.row(j).adjoint())(0, 0).real();
      if (gjj < opt_.singular_mass)
        throw SingularityError("Crank-Nicolson: midpoint mass of component " +
                               std::to_string(j + 1) + " is " + std::to_string(gjj));
      const cplx ratio = (MG.row(j) * W.row(j).adjoint())(0, 0) / gjj;
      Xn.row(j) = I.row(j) + c * (W.row(j) - ratio * Mc.row(j));
      const CMatrix d = Xn.row(j) - X.row(j);
      residual = std::max(residual, std::sqrt(std::max(0.0, (d * G * d.adjoint())(0, 0).real())));
    }
    X.swap(Xn);
    if (residual <= opt_.tolerance) {
      ++it;
      break;
    }
  }
  last_iterations_ = it;
  last_residual_ = residual;
  if (residual > opt_.tolerance) throw ConvergenceError(residual, it);

  // next_j = sum_k X_jk psi_k, one sweep over the grid.
  std::vector<cplx> col(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) col[k] = psi[k][i];
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += X(Eigen::Index(j), Eigen::Index(k)) * col[k];
      psi[j][i] = acc;
    }
  }
}

void TscnSolver::step() {
  kinetic_step(0.5 * dt_);
  phase_step(0.5 * dt_);
  lohe_cn_step(dt_);
  phase_step(0.5 * dt_);
  kinetic_step(0.5 * dt_);
  time_ += dt_;
}

void TscnSolver::evolve(std::size_t n) {
  if (n == 0) return;
  kinetic_step(0.5 * dt_);
  for (std::size_t s = 0; s < n; ++s) {
    phase_step(0.5 * dt_);
    lohe_cn_step(dt_);
    phase_step(0.5 * dt_);
    kinetic_step(s + 1 == n ? 0.5 * dt_ : dt_);
    time_ += dt_;
  }
}

WaveField kinetic_half_step(const WaveField& psi, double dt, double kinetic) {
  SpectralTransform fft(psi.grid);
  const auto& mu2 = fft.mu_squared();
  std::vector<cplx> mult(mu2.size());
  for (std::size_t i = 0; i < mu2.size(); ++i) mult[i] = std::polar(1.0, -0.5 * dt * kinetic * mu2[i]);
  WaveField out = psi;
  fft.apply_multiplier(out.values, mult);
  return out;
}

SLSystem phase_step(const SLSystem& sys, double dt) {
  TscnSolver s(sys, dt);
  s.phase_step(dt);
  return s.system();
}

SLSystem lohe_cn_step(const SLSystem& sys, double dt, CNOptions options) {
  TscnSolver s(sys, dt, options);
  s.lohe_cn_step(dt);
  return s.system();
}

SLSystem tscn_fp_step(const SLSystem& sys, double dt, CNOptions options) {
  TscnSolver s(sys, dt, options);
  s.step();
  return s.system();
}

}  // namespace lohe
