// The (Gross-Pitaevskii-)Schroedinger-Lohe system on a periodic grid:
//   i d/dt psi_j = -c Lap psi_j + V_j psi_j + sum_k beta_jk |psi_k|^2 psi_j
//                  + (i kappa / 2N) sum_k a_jk (psi_k - <psi_j,psi_k>/<psi_j,psi_j> psi_j)
// with kinetic coefficient c = 1/2 by default (c = 1 reproduces -u'' + x^2 u).

#pragma once

#include <vector>

#include "lohe/grid.hpp"
#include "lohe/linalg.hpp"

namespace lohe {

struct SLSystem {
  Grid grid;
  std::vector<CVector> fields;
  std::vector<std::vector<double>> potentials;  // per component; empty = zero
  RMatrix beta;       // N x N; empty (0 x 0) = linear SL
  RMatrix adjacency;  // N x N; empty = all-to-all a_jk = 1
  double kappa = 0.0;
  double kinetic = 0.5;

  std::size_t size() const noexcept { return fields.size(); }
  double a(std::size_t j, std::size_t k) const {
    return adjacency.size() ? adjacency(Eigen::Index(j), Eigen::Index(k)) : 1.0;
  }
  double b(std::size_t j, std::size_t k) const {
    return beta.size() ? beta(Eigen::Index(j), Eigen::Index(k)) : 0.0;
  }
  bool all_to_all() const;
  void validate() const;
};

// V(x) = scale |x|^2 + shift at every node.
std::vector<double> harmonic_potential(const Grid& g, double scale, double shift = 0.0);

// E = sum_j dx-sum [ c |grad psi_j|^2 + V_j |psi_j|^2 + 1/2 sum_k beta_jk |psi_k|^2 |psi_j|^2 ]
// with the gradient term evaluated spectrally.
double energy(const SLSystem& sys);
// Per-component energy without the coupling sum (used for eigenstate checks).
double component_energy(const SLSystem& sys, std::size_t j);

// x_c^j along axis k: dx-sum of x_k |psi_j|^2.
double center_of_mass(const Grid& g, std::span<const cplx> f, std::size_t k);

}  // namespace lohe
