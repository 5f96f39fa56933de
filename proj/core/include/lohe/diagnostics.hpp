// Aggregation functionals over ensembles of states: diameters, the order
// parameter, two-point correlations, cross-ratios, the variance functional and
// the unitary-pair aggregation functional L.
//
// States are viewed as flat complex arrays. `weight` is the quadrature weight
// (grid cell volume for wave fields, 1 for tensors).

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lohe/linalg.hpp"
#include "lohe/sl_system.hpp"
#include "lohe/tensor.hpp"

namespace lohe {

using StateViews = std::vector<std::span<const cplx>>;

StateViews views(const std::vector<CTensor>& states);
StateViews views(const std::vector<CVector>& states);
StateViews views(const std::vector<CMatrix>& states);
StateViews views(const std::vector<CVec>& states);
// Consecutive blocks of a flat ensemble state.
StateViews views(std::span<const cplx> flat, std::size_t block);

// max_{i,j} sqrt(weight * sum |x_i - x_j|^2).
double ensemble_diameter(const StateViews& states, double weight = 1.0);
double ensemble_diameter(const std::vector<BlockSkewTensor>& flows);
double ensemble_diameter(const std::vector<RVec>& states);

// ||(1/N) sum x_k|| in the weighted norm.
double order_parameter_rho(const StateViews& states, double weight = 1.0);

// Which argument of the inner product is conjugated. Vectors, matrices and
// tensors use <a,b> = sum conj(a) b; wave fields use <f,g>_dx = dx sum f conj(g).
enum class Conjugate { First, Second };

// h_ij = <x_i, x_j> under the chosen convention.
CMatrix correlation_matrix(const StateViews& states, double weight = 1.0,
                           Conjugate conj = Conjugate::First);
// Wave-field correlations h_ij = <psi_i, psi_j>_dx.
CMatrix correlation_matrix(const SLSystem& sys);

struct CrossRatio {
  cplx value{};
  bool defined = false;
};

// (1 - h_ij)(1 - h_kl) / ((1 - h_il)(1 - h_kj)); zero-based indices.
// Undefined when either denominator factor is below tol in modulus.
CrossRatio cross_ratio(const CMatrix& h, std::size_t i, std::size_t j, std::size_t k,
                       std::size_t l, double tol = 1e-12);

// (1/N) sum ||T_k - T_c||_F^2 and its unit-norm form 1 - ||T_c||_F^2.
double variance_functional(const StateViews& states);
double variance_from_centroid(const StateViews& states);

struct AggregationL {
  double diameter_u = 0.0;  // D(U)
  double diameter_v = 0.0;  // D(V)
  double spread_u = 0.0;    // S(U) = max |n - <U_i,U_j>_F|
  double spread_v = 0.0;    // S(V)
  double total() const noexcept { return diameter_u + diameter_v + spread_u + spread_v; }
};

AggregationL aggregation_L(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v);

// max_j ||U_j^+ U_j - I||_F.
double unitarity_defect(const std::vector<CMatrix>& u);

// max_{i,j} sup_x |V_i(x) - V_j(x)| over grid potentials (empty = zero).
double potential_diameter(const SLSystem& sys);

// Mean of the states (unweighted arithmetic centroid).
CVector centroid(const StateViews& states);

}  // namespace lohe
