#include "lohe/linalg.hpp"

#include <cmath>

namespace lohe {

CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  CMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix random_skew_hermitian(Eigen::Index n, Rng& rng, double scale) {
  CMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = cplx(0.0, scale * rng.uniform(-1.0, 1.0));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) = scale * rng.complex_uniform();
      h(j, i) = -std::conj(h(i, j));
    }
  }
  return h;
}

RMatrix random_skew_symmetric(Eigen::Index n, Rng& rng, double scale) {
  RMatrix h = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) = scale * rng.uniform(-1.0, 1.0);
      h(j, i) = -h(i, j);
    }
  return h;
}

CMatrix random_unit_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m / m.norm();
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix expm_skew_hermitian(const CMatrix& omega, double t) {
  // Omega = -i H with H = i Omega hermitian, so exp(t Omega) = W exp(-i t diag) W^dagger.
  const CMatrix h = kI * omega;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& w = es.eigenvectors();
  CVec phase(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    phase(k) = std::exp(cplx(0.0, -t * es.eigenvalues()(k)));
  return w * phase.asDiagonal() * w.adjoint();
}

}  // namespace lohe
