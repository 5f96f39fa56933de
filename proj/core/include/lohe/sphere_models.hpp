// Rank-1 reductions: the swarm sphere model, the Lohe hermitian sphere (LHS)
// model and the swarm double sphere (SDS) model.

#pragma once

#include <span>
#include <vector>

#include "lohe/linalg.hpp"

namespace lohe {

// x_j' = Omega_j x_j + kappa0 (<x_j,x_j> x_c - <x_c,x_j> x_j) on S^{d-1}.
struct SphereEnsemble {
  std::vector<RVec> points;
  std::vector<RMatrix> rotations;  // empty = zero, 1 = shared, N = per oscillator
  double kappa0 = 0.0;
};

// z_j' = Omega_j z_j + kappa0 (z_c <z_j,z_j> - z_j <z_c,z_j>)
//        + kappa1 (<z_j,z_c> - <z_c,z_j>) z_j,   <z,w> = sum conj(z) w.
struct LHSEnsemble {
  std::vector<CVec> states;
  std::vector<CMatrix> rotations;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
};

// Flat-state evaluator for the LHS model (the sphere model is its real case).
// Layout: N consecutive blocks of length d.
class LHSModel {
 public:
  LHSModel(Eigen::Index dim, std::size_t count, std::vector<CMatrix> rotations, double kappa0,
           double kappa1);
  explicit LHSModel(const LHSEnsemble& ens);
  explicit LHSModel(const SphereEnsemble& ens);

  std::size_t count() const noexcept { return count_; }
  Eigen::Index dim() const noexcept { return dim_; }
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;

 private:
  Eigen::Index dim_;
  std::size_t count_;
  std::vector<CMatrix> rotations_;
  double kappa0_, kappa1_;
};

std::vector<RVec> sphere_rhs(const SphereEnsemble& ens);
std::vector<CVec> lhs_rhs(const LHSEnsemble& ens);

CVector flatten(const std::vector<CVec>& v);
CVector flatten(const std::vector<RVec>& v);
std::vector<CVec> unflatten(std::span<const cplx> y, Eigen::Index dim);

// Swarm double sphere:
//   u_i' = Omega_i u_i + (kappa/N) sum_j <v_i,v_j> (u_j - <u_i,u_j> u_i)
//   v_i' = Lambda_i v_i + (kappa/N) sum_j <u_i,u_j> (v_j - <v_i,v_j> v_i)
struct SDSEnsemble {
  std::vector<RVec> u;
  std::vector<RVec> v;
  std::vector<RMatrix> omega;   // empty = zero, 1 = shared, N
  std::vector<RMatrix> lambda;  // empty = zero, 1 = shared, N
  double kappa = 0.0;

  std::size_t size() const noexcept { return u.size(); }
  void validate() const;
};

// Flat layout: per oscillator [u_i (d1), v_i (d2)], real values stored as complex.
class SDSModel {
 public:
  explicit SDSModel(const SDSEnsemble& ens);
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;
  // Normalizes u_i and v_i separately.
  void project(std::span<cplx> y) const;

  std::size_t count() const noexcept { return count_; }
  Eigen::Index d1() const noexcept { return d1_; }
  Eigen::Index d2() const noexcept { return d2_; }

 private:
  std::size_t count_;
  Eigen::Index d1_, d2_;
  std::vector<RMatrix> omega_, lambda_;
  double kappa_;
};

CVector flatten(const SDSEnsemble& ens);
void assign(SDSEnsemble& ens, std::span<const cplx> y);

struct SDSTangent {
  std::vector<RVec> du;
  std::vector<RVec> dv;
};
SDSTangent sds_rhs(const SDSEnsemble& ens);

// E_s = 1 - (1/N^2) sum_{i,j} <u_i,u_j><v_i,v_j>.
double sds_potential(const std::vector<RVec>& u, const std::vector<RVec>& v);
// -(N kappa / 2) P_T grad E_s using the analytic euclidean gradient.
SDSTangent sds_gradient_flow(const SDSEnsemble& ens);

}  // namespace lohe
