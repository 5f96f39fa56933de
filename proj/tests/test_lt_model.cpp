// Lohe tensor RHS against hand-written reduced formulas and its invariants.

#include <gtest/gtest.h>

#include "lohe/lt_model.hpp"
#include "lohe/linalg.hpp"
#include "lohe/matrix_models.hpp"
#include "lohe/random.hpp"
#include "lohe/separable.hpp"
#include "lohe/sphere_models.hpp"

namespace lohe {
namespace {

CVector random_ensemble(Rng& rng, std::size_t n, std::size_t block) {
  CVector y;
  for (std::size_t j = 0; j < n; ++j) {
    const CVector v = random_unit_vector(rng, block);
    y.insert(y.end(), v.begin(), v.end());
  }
  return y;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(TensorShape, RowMajorFlatIndex) {
  const TensorShape s{2, 3, 4};
  EXPECT_EQ(s.size(), 24u);
  const std::vector<std::size_t> idx{1, 2, 3};
  EXPECT_EQ(s.flat_index(idx), 1u * 12 + 2u * 4 + 3u);
  EXPECT_EQ(s.multi_index(23), idx);
}

TEST(IndexPattern, CodesAreLittleEndian) {
  const IndexPattern p({1, 0, 1});
  EXPECT_EQ(p.code(), 5u);
  EXPECT_EQ(IndexPattern::from_code(5, 3).bits(), p.bits());
  EXPECT_EQ(IndexPattern::enumerate(3).size(), 8u);
  EXPECT_TRUE(IndexPattern::from_code(0, 2).is_zero());
}

TEST(BlockSkewTensor, RandomIsSkew) {
  const auto a = random_block_skew(TensorShape{2, 3}, 7);
  EXPECT_LT(a.skew_defect(), 1e-14);
}

// Rank 1, zero pattern only: kappa0 (<x_j,x_j> x_c - <x_c,x_j> x_j) with <a,b> = sum conj(a) b.
TEST(LTModel, RankOneMatchesSphereFormula) {
  Rng rng(1);
  const std::size_t n = 5, d = 4;
  const double k0 = 0.7;
  const CVector y = random_ensemble(rng, n, d);
  const LTModel model(TensorShape{d}, n, {}, CouplingVector(1, {k0, 0.0}));
  CVector dy(y.size());
  model.rhs(y, dy);

  CVector expect(y.size());
  CVec xc = CVec::Zero(d);
  for (std::size_t j = 0; j < n; ++j) xc += Eigen::Map<const CVec>(&y[j * d], d) / double(n);
  for (std::size_t j = 0; j < n; ++j) {
    const CVec x = Eigen::Map<const CVec>(&y[j * d], d);
    const CVec f = k0 * (x.dot(x) * xc - xc.dot(x) * x);
    for (std::size_t i = 0; i < d; ++i) expect[j * d + i] = f[Eigen::Index(i)];
  }
  EXPECT_LT(max_diff(dy, expect), 1e-14);
}

// Rank 2 with the matrix-model coupling:
// kappa1 (Tc Tj^+ Tj - Tj Tc^+ Tj) + kappa2 (Tj Tj^+ Tc - Tj Tc^+ Tj).
TEST(LTModel, RankTwoMatchesMatrixFormula) {
  Rng rng(2);
  const std::size_t n = 4;
  const Eigen::Index r = 2, c = 3;
  const double k1 = 0.9, k2 = 0.4;
  const CVector y = random_ensemble(rng, n, std::size_t(r * c));
  const LTModel model(TensorShape{2, 3}, n, {}, matrix_model_coupling(k1, k2));
  CVector dy(y.size());
  model.rhs(y, dy);

  CMatrix tc = CMatrix::Zero(r, c);
  for (std::size_t j = 0; j < n; ++j) tc += as_matrix(std::span(y).subspan(j * 6, 6), r, c) / double(n);
  CVector expect(y.size());
  for (std::size_t j = 0; j < n; ++j) {
    const CMatrix t = as_matrix(std::span(y).subspan(j * 6, 6), r, c);
    const CMatrix f = k1 * (tc * t.adjoint() * t - t * tc.adjoint() * t) +
                      k2 * (t * t.adjoint() * tc - t * tc.adjoint() * t);
    for (Eigen::Index i = 0; i < f.size(); ++i) expect[j * 6 + std::size_t(i)] = f.data()[i];
  }
  EXPECT_LT(max_diff(dy, expect), 1e-14);
}

TEST(LTModel, MatrixModelClassAgrees) {
  Rng rng(3);
  MatrixEnsemble me;
  me.kappa1 = 1.0;
  me.kappa2 = 0.3;
  for (int j = 0; j < 3; ++j) me.states.push_back(random_unit_matrix(3, 2, rng));
  me.tensor_flows.push_back(random_block_skew(TensorShape{3, 2}, 9));
  const CVector y = flatten(me.states);
  CVector a(y.size()), b(y.size());
  MatrixLoheModel(me).rhs(y, a);
  LTModel(TensorShape{3, 2}, 3, me.tensor_flows, matrix_model_coupling(1.0, 0.3)).rhs(y, b);
  EXPECT_LT(max_diff(a, b), 1e-14);
}

// Every pattern term and the skew free flow are tangent to the unit sphere.
TEST(LTModel, RhsIsTangentForAllPatterns) {
  Rng rng(4);
  const TensorShape shape{2, 2, 3};
  const std::size_t n = 6;
  std::vector<double> kappas(8);
  for (auto& k : kappas) k = rng.uniform(0.0, 1.0);
  const CVector y = random_ensemble(rng, n, shape.size());
  std::vector<BlockSkewTensor> flows;
  for (std::size_t j = 0; j < n; ++j) flows.push_back(random_block_skew(shape, 100 + j));
  const LTModel model(shape, n, flows, CouplingVector(3, kappas));
  CVector dy(y.size());
  model.rhs(y, dy);
  for (std::size_t j = 0; j < n; ++j) {
    const auto t = std::span(y).subspan(j * shape.size(), shape.size());
    const auto dt = std::span(dy).subspan(j * shape.size(), shape.size());
    EXPECT_LT(std::abs(frobenius_inner(t, dt).real()), 1e-13) << "oscillator " << j;
  }
}

TEST(LTModel, IdenticalStatesAreEquilibria) {
  Rng rng(5);
  const CVector one = random_unit_vector(rng, 6);
  CVector y;
  for (int j = 0; j < 4; ++j) y.insert(y.end(), one.begin(), one.end());
  const LTModel model(TensorShape{2, 3}, 4, {}, CouplingVector(2, {1.0, 0.5, 0.2, 0.1}));
  CVector dy(y.size());
  model.rhs(y, dy);
  for (const auto& z : dy) EXPECT_LT(std::abs(z), 1e-15);
}

TEST(CouplingVector, RejectsBadSizes) {
  EXPECT_THROW(CouplingVector(0), DimensionError);
  EXPECT_THROW(CouplingVector(2, {1.0, 2.0}), std::invalid_argument);
}

TEST(LTModel, RejectsMismatchedFlowShape) {
  EXPECT_THROW(LTModel(TensorShape{2, 2}, 2, {random_block_skew(TensorShape{3}, 1)}, CouplingVector(2)),
               std::invalid_argument);
}

// Product rule: d/dt (u (x) v) = du (x) v + u (x) dv under the double-sphere flow.
TEST(SeparableLift, DoubleSphereProductRule) {
  Rng rng(6);
  SDSEnsemble e;
  e.kappa = 1.1;
  for (int j = 0; j < 4; ++j) {
    RVec u(3), v(2);
    for (auto& x : u) x = rng.normal();
    for (auto& x : v) x = rng.normal();
    e.u.push_back(u.normalized());
    e.v.push_back(v.normalized());
    e.omega.push_back(random_skew_symmetric(3, rng));
    e.lambda.push_back(random_skew_symmetric(2, rng));
  }
  const LTEnsemble lift = separable_lift(e);
  const CVector y = lift.flatten();
  CVector dy(y.size());
  LTModel(lift).rhs(y, dy);
  const SDSTangent f = sds_rhs(e);
  for (std::size_t j = 0; j < 4; ++j) {
    const CTensor expect = tensor_product(as_tensor(f.du[j]), as_tensor(e.v[j])) +
                           tensor_product(as_tensor(e.u[j]), as_tensor(f.dv[j]));
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(dy[j * 6 + i] - expect[i]), 0.0, 1e-14);
  }
}

TEST(SeparableLift, DoubleMatrixProductRule) {
  Rng rng(7);
  SDMEnsemble e;
  e.kappa1 = 0.8;
  e.kappa2 = 0.3;
  for (int j = 0; j < 3; ++j) {
    e.U.push_back(random_unit_matrix(2, 2, rng));
    e.V.push_back(random_unit_matrix(2, 3, rng));
  }
  e.B.push_back(random_block_skew(TensorShape{2, 2}, 11));
  e.C.push_back(random_block_skew(TensorShape{2, 3}, 12));
  const LTEnsemble lift = separable_lift(e);
  const CVector y = lift.flatten();
  CVector dy(y.size());
  LTModel(lift).rhs(y, dy);
  const SDMEnsemble f = sdm_rhs(e);
  const std::size_t block = 24;
  for (std::size_t j = 0; j < 3; ++j) {
    const CTensor expect = tensor_product(as_tensor(f.U[j]), as_tensor(e.V[j])) +
                           tensor_product(as_tensor(e.U[j]), as_tensor(f.V[j]));
    for (std::size_t i = 0; i < block; ++i) EXPECT_NEAR(std::abs(dy[j * block + i] - expect[i]), 0.0, 1e-14);
  }
}

TEST(SeparableLift, DefectOfExactProductIsZero) {
  Rng rng(8);
  const CTensor u = as_tensor(CVec(CVec::Random(3)));
  const CTensor v = as_tensor(CVec(CVec::Random(4)));
  EXPECT_LT(separability_defect(tensor_product(u, v), u, v), 1e-15);
}

}  // namespace
}  // namespace lohe
