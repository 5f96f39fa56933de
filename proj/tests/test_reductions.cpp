// Linear algebra helpers, Kuramoto, sphere/matrix reductions and threshold constants.

#include <gtest/gtest.h>

#include <cmath>

#include "lohe/integrator.hpp"
#include "lohe/kuramoto.hpp"
#include "lohe/linalg.hpp"
#include "lohe/matrix_models.hpp"
#include "lohe/random.hpp"
#include "lohe/sphere_models.hpp"
#include "lohe/theorem_constants.hpp"

namespace lohe {
namespace {

CMatrix taylor_exp(const CMatrix& a) {
  CMatrix sum = CMatrix::Identity(a.rows(), a.cols()), term = sum;
  for (int k = 1; k < 60; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  return sum;
}

TEST(Linalg, ExpOfSkewHermitianMatchesTaylorSeries) {
  Rng rng(1);
  const CMatrix om = random_skew_hermitian(4, rng);
  const CMatrix e = expm_skew_hermitian(om, 1.7);
  EXPECT_LT((e - taylor_exp(1.7 * om)).norm(), 1e-12);
  EXPECT_LT((e.adjoint() * e - CMatrix::Identity(4, 4)).norm(), 1e-13);
}

TEST(Linalg, RandomUnitaryAndPolarFactor) {
  Rng rng(2);
  const CMatrix u = random_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(5, 5)).norm(), 1e-13);
  CMatrix p = CMatrix::Random(5, 5);
  p = p * p.adjoint() + CMatrix::Identity(5, 5);  // hermitian positive definite
  EXPECT_LT((polar_unitary(u * p) - u).norm(), 1e-12);
  EXPECT_NEAR(random_unit_matrix(3, 2, rng).norm(), 1.0, 1e-14);
}

TEST(Kuramoto, TwoOscillatorsByHand) {
  RVec th(2), nu(2);
  th << 0.3, 1.1;
  nu << 0.5, -0.2;
  const double kappa = 1.5;
  const RVec f = kuramoto_rhs(plain_kuramoto(th, nu, kappa));
  // theta_j' = nu_j + (2 kappa / N) sum_k sin(theta_k - theta_j)
  EXPECT_NEAR(f[0], 0.5 + kappa * std::sin(0.8), 1e-15);
  EXPECT_NEAR(f[1], -0.2 + kappa * std::sin(-0.8), 1e-15);
}

TEST(Kuramoto, RhsIsNegativeGradientOfPotential) {
  Rng rng(3);
  std::vector<CVec> z;
  for (int j = 0; j < 4; ++j) {
    const CVector v = random_unit_vector(rng, 3);
    z.push_back(Eigen::Map<const CVec>(v.data(), 3));
  }
  KuramotoState st = frustrated_from_states(z, 1.3);
  for (auto& t : st.theta) t = rng.uniform(-3.0, 3.0);
  const RVec f = kuramoto_rhs(st);
  const double h = 1e-6;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    KuramotoState p = st, m = st;
    p.theta[j] += h;
    m.theta[j] -= h;
    const double g = (kuramoto_potential(p) - kuramoto_potential(m)) / (2.0 * h);
    EXPECT_NEAR(f[j], -g, 1e-8);
  }
}

TEST(SphereModels, LhsFormulaByHand) {
  Rng rng(4);
  LHSEnsemble e;
  e.kappa0 = 0.6;
  e.kappa1 = 0.9;
  for (int j = 0; j < 3; ++j) {
    const CVector v = random_unit_vector(rng, 2);
    e.states.push_back(Eigen::Map<const CVec>(v.data(), 2));
  }
  const auto f = lhs_rhs(e);
  const CVec zc = (e.states[0] + e.states[1] + e.states[2]) / 3.0;
  for (int j = 0; j < 3; ++j) {
    const CVec& z = e.states[std::size_t(j)];
    const CVec expect = 0.6 * (zc * z.dot(z) - z * zc.dot(z)) + 0.9 * (z.dot(zc) - zc.dot(z)) * z;
    EXPECT_LT((f[std::size_t(j)] - expect).norm(), 1e-15);
  }
}

TEST(SphereModels, DoubleSphereFieldEqualsGradientForm) {
  Rng rng(5);
  SDSEnsemble e;
  e.kappa = 0.8;
  for (int j = 0; j < 5; ++j) {
    RVec u(3), v(4);
    for (auto& x : u) x = rng.normal();
    for (auto& x : v) x = rng.normal();
    e.u.push_back(u.normalized());
    e.v.push_back(v.normalized());
  }
  const auto a = sds_rhs(e), b = sds_gradient_flow(e);
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_LT((a.du[j] - b.du[j]).norm(), 1e-14);
    EXPECT_LT((a.dv[j] - b.dv[j]).norm(), 1e-14);
  }
}

TEST(MatrixModels, UnitaryPairFieldIsTangent) {
  Rng rng(6);
  UnitaryPairEnsemble e;
  e.kappa = 1.0;
  for (int j = 0; j < 3; ++j) {
    e.U.push_back(random_unitary(2, rng));
    e.V.push_back(random_unitary(3, rng));
    const CMatrix h = random_skew_hermitian(2, rng);
    e.H.push_back(kI * h);
    const CMatrix g = random_skew_hermitian(3, rng);
    e.G.push_back(kI * g);
  }
  const auto f = unitary_pair_rhs(e);
  for (std::size_t j = 0; j < 3; ++j) {
    // U^+ dU is skew-hermitian on the unitary group.
    const CMatrix su = e.U[j].adjoint() * f.U[j];
    const CMatrix sv = e.V[j].adjoint() * f.V[j];
    EXPECT_LT((su + su.adjoint()).norm(), 1e-13);
    EXPECT_LT((sv + sv.adjoint()).norm(), 1e-13);
  }
}

TEST(MatrixModels, SvdReductionRejectsSecondCoupling) {
  Rng rng(7);
  MatrixEnsemble e;
  e.kappa1 = 1.0;
  e.kappa2 = 0.5;
  e.states = {random_unit_matrix(2, 2, rng)};
  EXPECT_THROW(svd_reduce(e), ConfigurationError);
}

TEST(Integrator, Rk4IsFourthOrder) {
  auto err = [](double dt) {
    CVector y{cplx(1.0, 0.0)};
    IntegratorConfig ic;
    ic.dt = dt;
    ic.t_end = 1.0;
    rk4_integrate([](double, std::span<const cplx> s, std::span<cplx> ds) { ds[0] = kI * s[0]; }, y, ic);
    return std::abs(y[0] - std::polar(1.0, 1.0));
  };
  EXPECT_NEAR(err(0.1) / err(0.05), 16.0, 0.5);
}

TEST(Integrator, ReportsDivergence) {
  CVector y{cplx(1.0, 0.0)};
  IntegratorConfig ic;
  ic.dt = 0.1;
  ic.t_end = 10.0;
  EXPECT_THROW(rk4_integrate([](double, std::span<const cplx> s, std::span<cplx> ds) { ds[0] = s[0] * s[0] * 1e3; },
                             y, ic),
               DivergenceError);
}

TEST(ThresholdConstants, EtaRootsSolveTheQuadratic) {
  const double k0 = 10.0, kh = 1.0, tc = 0.9, da = 0.5;
  const auto c = lt_aggregation_constants(k0, kh, tc, da);
  const double margin = k0 - 2.0 * kh * tc;
  EXPECT_DOUBLE_EQ(c.margin, margin);
  // -2 k0 x^2 + margin x - D(A) = 0 by the quadratic formula.
  const double disc = std::sqrt(margin * margin - 8.0 * k0 * da);
  EXPECT_NEAR(c.eta1, (margin - disc) / (4.0 * k0), 1e-14);
  EXPECT_NEAR(c.eta2, (margin + disc) / (4.0 * k0), 1e-14);
  EXPECT_TRUE(c.practical_hypothesis());
  EXPECT_FALSE(lt_aggregation_constants(k0, kh, tc, 10.0).practical_hypothesis());
}

TEST(ThresholdConstants, CubicRoots) {
  const auto r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_NEAR(r[1], 2.0, 1e-12);
  EXPECT_NEAR(r[2], 3.0, 1e-12);
  EXPECT_EQ(real_cubic_roots(1.0, 0.0, 1.0, 0.0).size(), 1u);
}

TEST(ThresholdConstants, PolynomialRoots) {
  EXPECT_NEAR(alpha_nm_polynomial(2, 30, alpha_nm(2, 30)), 0.0, 1e-10);
  const auto h = heterogeneous_sl_constants(0.01, 10.0);
  EXPECT_TRUE(h.hypothesis());
  EXPECT_NEAR(h.residual(h.alpha2), 0.0, 1e-12);
  EXPECT_NEAR(h.residual(h.alpha1), 0.0, 1e-12);
}

TEST(ThresholdConstants, NetworkStatsByHand) {
  RMatrix a(2, 2);
  a << 1.0, 0.8, 0.9, 1.2;
  const auto s = network_stats(a);
  EXPECT_NEAR(s.d, 0.4, 1e-15);      // |0.8 - 1.2|
  EXPECT_NEAR(s.am_c, 0.9, 1e-15);   // row means 0.9, 1.05
  EXPECT_NEAR(s.a_max, 1.2, 1e-15);
  EXPECT_TRUE(s.positive);
}

TEST(ThresholdConstants, BipolarHypothesis) {
  CMatrix h = CMatrix::Ones(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) h(i, j) = (i + j) % 2 ? -1.0 : 1.0;
  // 2 + h12 + h14 + h23 + h34 = -2 < h13 + h24 = 2.
  EXPECT_TRUE(bipolar_hypothesis(h));
  EXPECT_NEAR(bipolar_margin(h), 4.0, 1e-15);
  EXPECT_FALSE(bipolar_hypothesis(CMatrix::Ones(4, 4)));
}

}  // namespace
}  // namespace lohe
