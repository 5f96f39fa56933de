// Rank-2 reductions: the generalized Lohe matrix model, its SVD reduction to a
// unitary flow, the swarm double matrix (SDM) model and the unitary-pair model.

#pragma once

#include <span>
#include <vector>

#include "lohe/linalg.hpp"
#include "lohe/tensor.hpp"

namespace lohe {

// T_j' = A_j T_j + kappa1 (T_c T_j^+ T_j - T_j T_c^+ T_j)
//               + kappa2 (T_j T_j^+ T_c - T_j T_c^+ T_j)
// The free flow is either a left multiplication B_j T_j or a general
// block skew-hermitian rank-4 tensor; at most one of the two may be set.
struct MatrixEnsemble {
  std::vector<CMatrix> states;
  std::vector<CMatrix> left_flows;             // B_j; empty, 1 or N
  std::vector<BlockSkewTensor> tensor_flows;   // A_j; empty, 1 or N
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  std::size_t size() const noexcept { return states.size(); }
  Eigen::Index rows() const { return states.at(0).rows(); }
  Eigen::Index cols() const { return states.at(0).cols(); }
  void validate() const;
};

class MatrixLoheModel {
 public:
  explicit MatrixLoheModel(const MatrixEnsemble& ens);
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;
  std::size_t block() const noexcept { return std::size_t(rows_ * cols_); }

 private:
  std::size_t count_;
  Eigen::Index rows_, cols_;
  std::vector<CMatrix> left_;
  std::vector<BlockSkewTensor> tensor_;
  double kappa1_, kappa2_;
};

std::vector<CMatrix> gen_lohe_matrix_rhs(const MatrixEnsemble& ens);

CVector flatten(const std::vector<CMatrix>& m);
std::vector<CMatrix> unflatten_matrices(std::span<const cplx> y, Eigen::Index rows,
                                        Eigen::Index cols);

// Block skew tensor of the left multiplication [A]_{a b c d} = [B]_{a c} delta_{b d}
// on d1 x d2 matrices.
BlockSkewTensor left_multiplication_flow(const CMatrix& b, Eigen::Index cols);
// [A]_{a b c d} = delta_{a c} [C]_{b d}: T -> T C^T.
BlockSkewTensor right_multiplication_flow(const CMatrix& c, Eigen::Index rows);

// Reduction of the kappa2 = 0 model with common Gram matrix T_j^+ T_j:
// T_j = U_j S with S = Sigma V^+ shared, and
//   U_j' = B_j U_j + kappa1 (U_c D - U_j D U_c^+ U_j),  D = S S^+ = diag(lambda^2).
struct SvdReduction {
  CMatrix S;                  // d1 x d2
  RVec lambda_sq;             // diagonal of D (length d1, zero-padded)
  std::vector<CMatrix> U0;    // unitary d1 x d1
  std::vector<CMatrix> left_flows;
  double kappa1 = 0.0;

  double mean_lambda_sq() const;   // <lambda^2>
  double spread_lambda_sq() const; // Delta(lambda^2)
  double A() const { return mean_lambda_sq() + spread_lambda_sq(); }
  double B() const { return mean_lambda_sq() - spread_lambda_sq(); }
  CMatrix reconstruct(const CMatrix& u) const { return u * S; }
};

// Throws ConfigurationError if kappa2 != 0, a general tensor free flow is set,
// or the Gram matrices differ by more than gram_tol.
SvdReduction svd_reduce(const MatrixEnsemble& ens, double gram_tol = 1e-10);

class UnitaryLoheModel {
 public:
  explicit UnitaryLoheModel(const SvdReduction& red);
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;
  void project(std::span<cplx> y) const;

 private:
  std::size_t count_;
  Eigen::Index n_;
  CMatrix D_;
  std::vector<CMatrix> left_;
  double kappa1_;
};

// Swarm double matrix model (pairs of matrices U_j in C^{d1 x d2}, V_j in C^{d3 x d4}).
struct SDMEnsemble {
  std::vector<CMatrix> U;
  std::vector<CMatrix> V;
  std::vector<BlockSkewTensor> B;  // base shape (d1,d2); empty, 1 or N
  std::vector<BlockSkewTensor> C;  // base shape (d3,d4); empty, 1 or N
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  std::size_t size() const noexcept { return U.size(); }
  void validate() const;
};

// Flat layout: per oscillator [U_j (d1 d2), V_j (d3 d4)], row-major.
class SDMModel {
 public:
  explicit SDMModel(const SDMEnsemble& ens);
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;
  std::size_t block() const noexcept { return std::size_t(d1_ * d2_ + d3_ * d4_); }

 private:
  std::size_t count_;
  Eigen::Index d1_, d2_, d3_, d4_;
  std::vector<BlockSkewTensor> B_, C_;
  double kappa1_, kappa2_;
};

CVector flatten(const SDMEnsemble& ens);
void assign(SDMEnsemble& ens, std::span<const cplx> y);
SDMEnsemble sdm_rhs(const SDMEnsemble& ens);  // returns (dU, dV) in the U/V slots

// E_m = 1 - (1/N^2) sum <U_i,U_j>_F <V_i,V_j>_F (real part; the sum is real).
double sdm_potential(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v);

// Unitary-pair model on U(n) x U(m):
//   U_j' = -i H_j U_j + (kappa/N) sum_k (<V_j,V_k>_F U_k - <V_k,V_j>_F U_j U_k^+ U_j)
//   V_j' = -i G_j V_j + (kappa/N) sum_k (<U_j,U_k>_F V_k - <U_k,U_j>_F V_j V_k^+ V_j)
struct UnitaryPairEnsemble {
  std::vector<CMatrix> U;
  std::vector<CMatrix> V;
  std::vector<CMatrix> H;  // hermitian; empty, 1 or N
  std::vector<CMatrix> G;
  double kappa = 0.0;

  std::size_t size() const noexcept { return U.size(); }
  void validate() const;
};

class UnitaryPairModel {
 public:
  explicit UnitaryPairModel(const UnitaryPairEnsemble& ens);
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;
  // Replaces each factor by its polar unitary part.
  void project(std::span<cplx> y) const;
  std::size_t block() const noexcept { return std::size_t(n_ * n_ + m_ * m_); }

 private:
  std::size_t count_;
  Eigen::Index n_, m_;
  std::vector<CMatrix> H_, G_;
  double kappa_;
};

CVector flatten(const UnitaryPairEnsemble& ens);
void assign(UnitaryPairEnsemble& ens, std::span<const cplx> y);
UnitaryPairEnsemble unitary_pair_rhs(const UnitaryPairEnsemble& ens);

double unitary_pair_potential(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v);

}  // namespace lohe
