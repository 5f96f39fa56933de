#include "lohe/kuramoto.hpp"

#include <cmath>

namespace lohe {

void KuramotoState::validate() const {
  const auto n = theta.size();
  if (n == 0) throw DimensionError("Kuramoto: no oscillators");
  if (nu.size() != 0 && nu.size() != n) throw DimensionError("Kuramoto: nu has wrong length");
  if (alpha.rows() != n || alpha.cols() != n || amplitude.rows() != n || amplitude.cols() != n)
    throw DimensionError("Kuramoto: R and alpha must be N x N");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(amplitude(i, j) - amplitude(j, i)) > 1e-12)
        throw ConfigurationError("Kuramoto: R must be symmetric");
      if (std::abs(alpha(i, j) + alpha(j, i)) > 1e-12)
        throw ConfigurationError("Kuramoto: alpha must be antisymmetric");
    }
}

KuramotoState plain_kuramoto(RVec theta, RVec nu, double kappa) {
  const auto n = theta.size();
  KuramotoState st{std::move(theta), std::move(nu), RMatrix::Zero(n, n), RMatrix::Ones(n, n),
                   kappa};
  st.validate();
  return st;
}

KuramotoState frustrated_from_states(const std::vector<CVec>& z0, double kappa) {
  const auto n = Eigen::Index(z0.size());
  KuramotoState st;
  st.theta = RVec::Zero(n);
  st.alpha = RMatrix::Zero(n, n);
  st.amplitude = RMatrix::Zero(n, n);
  st.kappa = kappa;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx h = z0[j].dot(z0[k]);  // <z_j, z_k>
      st.amplitude(j, k) = std::abs(h);
      st.alpha(j, k) = std::abs(h) > 0.0 ? std::arg(h) : 0.0;
    }
  // Symmetrize against roundoff in the arguments.
  st.amplitude = 0.5 * (st.amplitude + st.amplitude.transpose()).eval();
  st.alpha = 0.5 * (st.alpha - st.alpha.transpose()).eval();
  st.validate();
  return st;
}

void kuramoto_rhs(const KuramotoState& st, std::span<const double> theta,
                  std::span<double> dtheta) {
  const std::size_t n = st.size();
  if (theta.size() != n || dtheta.size() != n) throw DimensionError("kuramoto_rhs: size");
  const double w = 2.0 * st.kappa / double(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      s += st.amplitude(j, k) * std::sin(theta[k] - theta[j] + st.alpha(j, k));
    dtheta[j] = (st.nu.size() ? st.nu(j) : 0.0) + w * s;
  }
}

RVec kuramoto_rhs(const KuramotoState& st) {
  st.validate();
  RVec out(st.theta.size());
  kuramoto_rhs(st, std::span<const double>(st.theta.data(), st.size()),
               std::span<double>(out.data(), st.size()));
  return out;
}

double kuramoto_potential(const KuramotoState& st) {
  const std::size_t n = st.size();
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v += st.amplitude(i, j) * (1.0 - std::cos(st.theta(i) - st.theta(j) + st.alpha(j, i)));
  v *= st.kappa / double(n);
  if (st.nu.size()) v -= st.nu.dot(st.theta);
  return v;
}

RVec kuramoto_potential_gradient(const KuramotoState& st) { return -kuramoto_rhs(st); }

}  // namespace lohe
