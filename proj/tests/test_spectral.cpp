// Grid, FFT kernels, Hermite functions and the TSCN-FP sub-steps against exact solutions.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lohe/diagnostics.hpp"
#include "lohe/fft.hpp"
#include "lohe/hermite.hpp"
#include "lohe/sl_init.hpp"
#include "lohe/tscn.hpp"

namespace lohe {
namespace {

constexpr double kPi = std::numbers::pi;

Grid grid1d(std::size_t m, double a = -12.0, double b = 12.0) {
  Axis ax;
  ax.a = a;
  ax.b = b;
  ax.M = m;
  return Grid(ax);
}

TEST(Grid, NodesAndWavenumbers) {
  const Grid g = grid1d(8, -2.0, 2.0);
  EXPECT_DOUBLE_EQ(g.cell(), 0.5);
  EXPECT_DOUBLE_EQ(g.coord(3, 0), -0.5);
  EXPECT_DOUBLE_EQ(g.axis(0).wavenumber(1), 2.0 * kPi / 4.0);
  EXPECT_DOUBLE_EQ(g.axis(0).wavenumber(7), -2.0 * kPi / 4.0);
  Axis odd;
  odd.M = 7;
  EXPECT_THROW(Grid{odd}, std::invalid_argument);
}

TEST(Grid, DiscreteInnerProductConjugatesSecondArgument) {
  const Grid g = grid1d(8, 0.0, 1.0);
  CVector f(8, cplx(0.0, 1.0)), h(8, cplx(1.0, 0.0));
  // dx sum f conj(h) = 1 * i
  EXPECT_NEAR(std::abs(discrete_inner(g, f, h) - cplx(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(discrete_mass(g, f), 1.0, 1e-15);
}

TEST(Spectral, DerivativeOfTrigPolynomialIsExact) {
  const Grid g = grid1d(64, 0.0, 2.0 * kPi);
  SpectralTransform fft(g);
  CVector f(64), df(64), lap(64);
  for (std::size_t l = 0; l < 64; ++l) {
    const double x = g.coord(l, 0);
    f[l] = std::sin(3.0 * x) + cplx(0.0, 1.0) * std::cos(5.0 * x);
  }
  fft.derivative(f, 0, df);
  fft.laplacian(f, lap);
  for (std::size_t l = 0; l < 64; ++l) {
    const double x = g.coord(l, 0);
    EXPECT_NEAR(std::abs(df[l] - (3.0 * std::cos(3.0 * x) - cplx(0.0, 5.0) * std::sin(5.0 * x))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(lap[l] - (-9.0 * std::sin(3.0 * x) - cplx(0.0, 25.0) * std::cos(5.0 * x))), 0.0, 1e-11);
  }
}

TEST(Spectral, GradientEnergyByParseval) {
  const Grid g = grid1d(32, 0.0, 2.0 * kPi);
  SpectralTransform fft(g);
  CVector f(32);
  for (std::size_t l = 0; l < 32; ++l) f[l] = std::sin(2.0 * g.coord(l, 0));
  // int |2 cos 2x|^2 over [0, 2 pi] = 4 pi
  EXPECT_NEAR(fft.gradient_energy(f), 4.0 * kPi, 1e-12);
}

TEST(Hermite, PolynomialsMatchClosedForms) {
  for (double x : {-1.3, 0.0, 0.4, 2.2}) {
    EXPECT_NEAR(hermite_polynomial(2, x), 4 * x * x - 2, 1e-12);
    EXPECT_NEAR(hermite_polynomial(3, x), 8 * x * x * x - 12 * x, 1e-12);
    EXPECT_NEAR(hermite_polynomial(4, x), 16 * std::pow(x, 4) - 48 * x * x + 12, 1e-11);
  }
  EXPECT_NEAR(hermite_function_value(0, 0.0), std::pow(kPi, -0.25), 1e-15);
}

// -u_k'' + x^2 u_k = (2k+1) u_k with the spectral second derivative.
TEST(Hermite, EigenResidualIsSpectrallySmall) {
  const Grid g = grid1d(256);
  SpectralTransform fft(g);
  for (int k = 0; k <= 5; ++k) {
    const WaveField u = hermite_function(HermiteSpec{k}, g);
    CVector lap(g.size());
    fft.laplacian(u.values, lap);
    double res = 0.0;
    for (std::size_t l = 0; l < g.size(); ++l) {
      const double x = g.coord(l, 0);
      res = std::max(res, std::abs(-lap[l] + x * x * u.values[l] - (2.0 * k + 1.0) * u.values[l]));
    }
    EXPECT_LE(res, 1e-8) << "k = " << k;
    EXPECT_NEAR(discrete_mass(g, u.values), 1.0, 1e-12);
  }
}

SLSystem single(const Grid& g, CVector f) {
  SLSystem s;
  s.grid = g;
  s.fields = {std::move(f)};
  return s;
}

TEST(Tscn, KineticStepOnPlaneWaveIsExact) {
  const Grid g = grid1d(64, 0.0, 1.0);
  const double k0 = 2.0 * kPi * 3.0, tau = 0.37;
  CVector f(64);
  for (std::size_t l = 0; l < 64; ++l) f[l] = std::polar(1.0, k0 * g.coord(l, 0));
  TscnSolver solver(single(g, f), 1e-3);
  solver.kinetic_step(tau);
  const cplx phase = std::polar(1.0, -0.5 * k0 * k0 * tau);
  for (std::size_t l = 0; l < 64; ++l) EXPECT_NEAR(std::abs(solver.system().fields[0][l] - f[l] * phase), 0.0, 1e-11);
}

TEST(Tscn, PhaseStepIsExactPointwiseRotation) {
  const Grid g = grid1d(32);
  SLSystem s = single(g, gaussian_init({{0.5, 0.0}}, {1.0}, g)[0]);
  s.potentials = {harmonic_potential(g, 0.3)};
  s.beta = RMatrix::Constant(1, 1, 2.0);
  const CVector f = s.fields[0];
  const SLSystem out = phase_step(s, 0.2);
  for (std::size_t l = 0; l < 32; ++l) {
    const double x = g.coord(l, 0);
    const cplx expect = f[l] * std::polar(1.0, -0.2 * (0.3 * x * x + 2.0 * std::norm(f[l])));
    EXPECT_NEAR(std::abs(out.fields[0][l] - expect), 0.0, 1e-14);
  }
}

TEST(Tscn, CouplingStepConservesMassAndFixesIdenticalStates) {
  const Grid g = grid1d(128);
  SLSystem s;
  s.grid = g;
  s.fields = gaussian_init({{-1.0, 0.0}, {0.0, 0.0}, {1.5, 0.0}}, {1.0}, g);
  s.kappa = 5.0;
  const SLSystem out = lohe_cn_step(s, 1e-2);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(discrete_mass(g, out.fields[j]), 1.0, 1e-12);

  SLSystem same = s;
  same.fields = {s.fields[0], s.fields[0]};
  const SLSystem fixed = lohe_cn_step(same, 1e-2);
  EXPECT_LT(discrete_distance(g, fixed.fields[1], s.fields[0]), 1e-14);
}

// With V_j = nu_j (constant) and identical spatial profiles, the fields stay
// proportional and h = <psi_1, psi_2> follows h' = -i (nu_1 - nu_2) h + kappa/2 (1 - h^2)
// for N = 2; at kappa = 0 it is a pure rotation e^{-i (nu_1 - nu_2) t}.
TEST(Tscn, UncoupledConstantPotentialsRotateCorrelation) {
  const Grid g = grid1d(64);
  SLSystem s;
  s.grid = g;
  const CVector f = gaussian_init({{0.0, 0.0}}, {1.0}, g)[0];
  s.fields = {f, f};
  s.potentials = {std::vector<double>(64, 0.7), std::vector<double>(64, -0.3)};
  TscnSolver solver(s, 1e-2);
  solver.evolve(100);
  const cplx h = correlation_matrix(solver.system())(0, 1);
  EXPECT_NEAR(std::abs(h - std::polar(1.0, -1.0)), 0.0, 1e-12);
}

TEST(Tscn, TwoDimensionalMassConservation) {
  Axis ax;
  ax.M = 32;
  ax.a = -6.0;
  ax.b = 6.0;
  const Grid g(ax, ax);
  SLSystem s;
  s.grid = g;
  s.fields = gaussian_init({{1.0, 0.0}, {-0.5, 0.8}}, {1.0}, g);
  s.potentials = {harmonic_potential(g, 1.0), harmonic_potential(g, 2.0)};
  s.beta = RMatrix::Ones(2, 2);
  s.kappa = 3.0;
  TscnSolver solver(s, 1e-3);
  solver.evolve(200);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(discrete_mass(g, solver.system().fields[j]), 1.0, 1e-12);
}

TEST(Tscn, RejectsInconsistentSystems) {
  const Grid g = grid1d(32);
  SLSystem s = single(g, CVector(16));
  EXPECT_THROW(TscnSolver(s, 1e-3), std::invalid_argument);
  SLSystem t = single(g, CVector(32, 1.0));
  EXPECT_THROW(TscnSolver(t, -1.0), std::invalid_argument);
}

TEST(StandingWaves, BipolarFamilyFlipsFirstComponent) {
  const Grid g = grid1d(256);
  const SLSystem s = standing_wave_init(StandingFamily::Bipolar, 1, 3, g, 1.0);
  EXPECT_DOUBLE_EQ(s.kinetic, 1.0);
  for (std::size_t l = 0; l < g.size(); ++l) {
    EXPECT_EQ(s.fields[0][l], -s.fields[1][l]);
    EXPECT_EQ(s.fields[1][l], s.fields[2][l]);
  }
}

}  // namespace
}  // namespace lohe
