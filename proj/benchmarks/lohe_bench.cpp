// Kernel timings: Lohe tensor RHS, spectral kinetic step, Lohe Crank-Nicolson
// step and full TSCN-FP steps in 1D and 2D.

#include <benchmark/benchmark.h>

#include "lohe/lt_model.hpp"
#include "lohe/random.hpp"
#include "lohe/sl_init.hpp"
#include "lohe/tscn.hpp"

namespace {

using namespace lohe;

void BM_lt_rhs(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto d = std::size_t(state.range(1));
  const TensorShape shape{d, d};
  Rng rng(1);
  CVector y;
  for (std::size_t j = 0; j < n; ++j) {
    const CVector v = random_unit_vector(rng, shape.size());
    y.insert(y.end(), v.begin(), v.end());
  }
  const LTModel model(shape, n, {random_block_skew(shape, 2)}, CouplingVector(2, {1.0, 0.5, 0.5, 0.0}));
  CVector dy(y.size());
  for (auto _ : state) {
    model.rhs(y, dy);
    benchmark::DoNotOptimize(dy.data());
  }
}
BENCHMARK(BM_lt_rhs)->Args({8, 3})->Args({64, 3})->Args({64, 8});

SLSystem wave_system(std::size_t dim, std::size_t m, std::size_t n) {
  Axis ax;
  ax.M = m;
  SLSystem s;
  s.grid = dim == 1 ? Grid(ax) : Grid(ax, ax);
  std::vector<std::array<double, 2>> centers;
  for (std::size_t j = 0; j < n; ++j) centers.push_back({double(j) - 0.5 * double(n), 0.5});
  s.fields = gaussian_init(centers, {1.0}, s.grid);
  for (std::size_t j = 0; j < n; ++j) s.potentials.push_back(harmonic_potential(s.grid, 1.0));
  s.beta = RMatrix::Ones(Eigen::Index(n), Eigen::Index(n));
  s.kappa = 20.0;
  return s;
}

void BM_kinetic_step(benchmark::State& state) {
  TscnSolver solver(wave_system(std::size_t(state.range(0)), std::size_t(state.range(1)), 2), 2e-4);
  for (auto _ : state) solver.kinetic_step(1e-4);
}
BENCHMARK(BM_kinetic_step)->Args({1, 512})->Args({2, 256});

void BM_lohe_cn_step(benchmark::State& state) {
  TscnSolver solver(wave_system(1, std::size_t(state.range(0)), std::size_t(state.range(1))), 2e-4);
  for (auto _ : state) solver.lohe_cn_step(2e-4);
}
BENCHMARK(BM_lohe_cn_step)->Args({512, 2})->Args({512, 6});

void BM_tscn_step(benchmark::State& state) {
  const auto dim = std::size_t(state.range(0));
  TscnSolver solver(wave_system(dim, std::size_t(state.range(1)), std::size_t(state.range(2))), 2e-4);
  for (auto _ : state) solver.step();
}
BENCHMARK(BM_tscn_step)->Args({1, 512, 2})->Args({2, 128, 6})->Args({2, 256, 6})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
