#include "lohe/separable.hpp"

namespace lohe {

CouplingVector matrix_model_coupling(double kappa1, double kappa2) {
  CouplingVector c(2);
  c.set(IndexPattern({0, 1}), kappa1);
  c.set(IndexPattern({1, 0}), kappa2);
  return c;
}

CouplingVector sdm_coupling(double kappa1, double kappa2) {
  CouplingVector c(4);
  c.set(IndexPattern({0, 1, 1, 1}), kappa1);
  c.set(IndexPattern({1, 0, 1, 1}), kappa2);
  c.set(IndexPattern({1, 1, 0, 1}), kappa1);
  c.set(IndexPattern({1, 1, 1, 0}), kappa2);
  return c;
}

BlockSkewTensor two_sided_flow(const CMatrix& omega, const CMatrix& lambda) {
  const Eigen::Index d1 = omega.rows(), d2 = lambda.rows();
  BlockSkewTensor a = left_multiplication_flow(omega, d2);
  a += right_multiplication_flow(lambda, d1);
  return a;
}

BlockSkewTensor product_flow(const BlockSkewTensor& b, const BlockSkewTensor& c) {
  const std::size_t nu = b.block_size(), nv = c.block_size();
  BlockSkewTensor a = BlockSkewTensor::zero(b.base_shape().concat(c.base_shape()));
  for (std::size_t iu = 0; iu < nu; ++iu)
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const std::size_t row = iu * nv + iv;
      for (std::size_t ju = 0; ju < nu; ++ju) a(row, ju * nv + iv) += b(iu, ju);
      for (std::size_t jv = 0; jv < nv; ++jv) a(row, iu * nv + jv) += c(iv, jv);
    }
  return a;
}

CTensor as_tensor(const RVec& x) {
  CVector e(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) e[std::size_t(i)] = x(i);
  return CTensor(TensorShape{std::size_t(x.size())}, std::move(e));
}

CTensor as_tensor(const CVec& x) {
  return CTensor(TensorShape{std::size_t(x.size())}, CVector(x.data(), x.data() + x.size()));
}

CTensor as_tensor(const CMatrix& m) {
  return CTensor(TensorShape{std::size_t(m.rows()), std::size_t(m.cols())},
                 CVector(m.data(), m.data() + m.size()));
}

LTEnsemble separable_lift(const SDSEnsemble& ens) {
  ens.validate();
  LTEnsemble lt;
  for (std::size_t i = 0; i < ens.size(); ++i)
    lt.states.push_back(tensor_product(as_tensor(ens.u[i]), as_tensor(ens.v[i])));
  const auto d1 = ens.u[0].size(), d2 = ens.v[0].size();
  const std::size_t flows = std::max(ens.omega.size(), ens.lambda.size());
  if (flows > 0) {
    if (ens.omega.size() > 1 && ens.lambda.size() > 1 && ens.omega.size() != ens.lambda.size())
      throw ConfigurationError("separable_lift: inconsistent free-flow counts");
    for (std::size_t i = 0; i < flows; ++i) {
      const CMatrix om = ens.omega.empty() ? CMatrix::Zero(d1, d1)
                                           : CMatrix(ens.omega[ens.omega.size() == 1 ? 0 : i]
                                                         .cast<cplx>());
      const CMatrix la = ens.lambda.empty() ? CMatrix::Zero(d2, d2)
                                            : CMatrix(ens.lambda[ens.lambda.size() == 1 ? 0 : i]
                                                          .cast<cplx>());
      lt.free_flows.push_back(two_sided_flow(om, la));
    }
  }
  lt.coupling = matrix_model_coupling(ens.kappa, ens.kappa);
  return lt;
}

LTEnsemble separable_lift(const SDMEnsemble& ens) {
  ens.validate();
  LTEnsemble lt;
  for (std::size_t i = 0; i < ens.size(); ++i)
    lt.states.push_back(tensor_product(as_tensor(ens.U[i]), as_tensor(ens.V[i])));
  const TensorShape su{std::size_t(ens.U[0].rows()), std::size_t(ens.U[0].cols())};
  const TensorShape sv{std::size_t(ens.V[0].rows()), std::size_t(ens.V[0].cols())};
  const std::size_t flows = std::max(ens.B.size(), ens.C.size());
  if (ens.B.size() > 1 && ens.C.size() > 1 && ens.B.size() != ens.C.size())
    throw ConfigurationError("separable_lift: inconsistent free-flow counts");
  for (std::size_t i = 0; i < flows; ++i) {
    const BlockSkewTensor b =
        ens.B.empty() ? BlockSkewTensor::zero(su) : ens.B[ens.B.size() == 1 ? 0 : i];
    const BlockSkewTensor c =
        ens.C.empty() ? BlockSkewTensor::zero(sv) : ens.C[ens.C.size() == 1 ? 0 : i];
    lt.free_flows.push_back(product_flow(b, c));
  }
  lt.coupling = sdm_coupling(ens.kappa1, ens.kappa2);
  return lt;
}

double separability_defect(const CTensor& t, const CTensor& u, const CTensor& v) {
  return frobenius_norm(t - tensor_product(u, v));
}

}  // namespace lohe
