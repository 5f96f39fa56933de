// Eigen aliases and views of flat row-major blocks as matrices.

#pragma once

#include <Eigen/Dense>
#include <span>

#include "lohe/random.hpp"
#include "lohe/types.hpp"

namespace lohe {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

using CMatrixMap = Eigen::Map<CMatrix>;
using ConstCMatrixMap = Eigen::Map<const CMatrix>;

inline ConstCMatrixMap as_matrix(std::span<const cplx> s, Eigen::Index rows, Eigen::Index cols) {
  return ConstCMatrixMap(s.data(), rows, cols);
}
inline CMatrixMap as_matrix(std::span<cplx> s, Eigen::Index rows, Eigen::Index cols) {
  return CMatrixMap(s.data(), rows, cols);
}

// <A,B>_F = sum conj(A) B.
inline cplx frob(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

// Haar-distributed unitary via QR of a complex gaussian matrix.
CMatrix random_unitary(Eigen::Index n, Rng& rng);
// Random skew-hermitian matrix with entries of size ~scale.
CMatrix random_skew_hermitian(Eigen::Index n, Rng& rng, double scale = 1.0);
RMatrix random_skew_symmetric(Eigen::Index n, Rng& rng, double scale = 1.0);
CMatrix random_unit_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Nearest unitary (polar factor) of a square matrix.
CMatrix polar_unitary(const CMatrix& m);

// exp(t*Omega) for skew-hermitian Omega, via the eigendecomposition of i*Omega.
CMatrix expm_skew_hermitian(const CMatrix& omega, double t);

}  // namespace lohe
