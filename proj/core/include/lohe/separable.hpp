// Tensor-product lifts of factor flows into the Lohe tensor model:
//   rank 2: T_i = u_i (x) v_i from the swarm double sphere model,
//   rank 4: T_i = U_i (x) V_i from the swarm double matrix model.

#pragma once

#include "lohe/lt_model.hpp"
#include "lohe/matrix_models.hpp"
#include "lohe/sphere_models.hpp"

namespace lohe {

// States u_i (x) v_i, free flow A_i T = Omega_i T + T Lambda_i^T, and
// kappa on the two mixed patterns of rank 2 (all others zero).
LTEnsemble separable_lift(const SDSEnsemble& ens);

// States U_i (x) V_i, free flow A = B (x) delta delta + delta delta (x) C, and
// the four single-zero patterns weighted kappa1 / kappa2 as the SDM model requires.
LTEnsemble separable_lift(const SDMEnsemble& ens);

// Coupling vector of rank 2 equivalent to the generalized Lohe matrix model.
CouplingVector matrix_model_coupling(double kappa1, double kappa2);
// Coupling vector of rank 4 equivalent to the SDM model.
CouplingVector sdm_coupling(double kappa1, double kappa2);

// Rank-2 free-flow tensor of T -> Omega T + T Lambda^T.
BlockSkewTensor two_sided_flow(const CMatrix& omega, const CMatrix& lambda);
// Rank-4 free-flow tensor B (x) delta delta + delta delta (x) C.
BlockSkewTensor product_flow(const BlockSkewTensor& b, const BlockSkewTensor& c);

// || T - u (x) v ||_F.
double separability_defect(const CTensor& t, const CTensor& u, const CTensor& v);

CTensor as_tensor(const RVec& x);
CTensor as_tensor(const CVec& x);
CTensor as_tensor(const CMatrix& m);

}  // namespace lohe
