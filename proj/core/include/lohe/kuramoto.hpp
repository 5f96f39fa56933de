// Kuramoto model with frustration:
//   theta_j' = nu_j + (2 kappa / N) sum_k R_jk sin(theta_k - theta_j + alpha_jk)
// Plain Kuramoto is R = 1, alpha = 0.

#pragma once

#include <span>
#include <vector>

#include "lohe/linalg.hpp"

namespace lohe {

struct KuramotoState {
  RVec theta;
  RVec nu;       // empty = zero
  RMatrix alpha;  // antisymmetric
  RMatrix amplitude;  // R, symmetric, entries in [0,1]
  double kappa = 0.0;

  std::size_t size() const noexcept { return std::size_t(theta.size()); }
  void validate() const;
};

// Plain model: R = 1, alpha = 0.
KuramotoState plain_kuramoto(RVec theta, RVec nu, double kappa);

// R_jk e^{i alpha_jk} = <z_j, z_k> from initial hermitian-sphere data.
KuramotoState frustrated_from_states(const std::vector<CVec>& z0, double kappa);

RVec kuramoto_rhs(const KuramotoState& st);
void kuramoto_rhs(const KuramotoState& st, std::span<const double> theta, std::span<double> dtheta);

// V = (kappa/N) sum_{i,j} R_ij (1 - cos(theta_i - theta_j + alpha_ji)) - sum_j nu_j theta_j,
// so that theta' = -grad V.
double kuramoto_potential(const KuramotoState& st);
RVec kuramoto_potential_gradient(const KuramotoState& st);

}  // namespace lohe
