#include <benchmark/benchmark.h>

#include <random>

#include "kinetic/dynamics.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/picard.hpp"

using namespace kinetic;

namespace {

PhaseGridPtr grid(int dim, int n, std::size_t shells, std::size_t angles) {
  std::array<int, 3> cells{1, 1, 1};
  std::array<double, 3> extent{1.0, 1.0, 1.0};
  for (int d = 0; d < dim; ++d) {
    cells[d] = n;
    extent[d] = 2.0;
  }
  return make_phase_grid(SpatialGrid(dim, extent, cells), build_velocity_grid(shells, angles, 2.0));
}

DistributionField field(const PhaseGridPtr& g) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(g->size());
  for (auto& x : v) x = u(rng);
  return DistributionField(g, std::move(v));
}

void BM_Q2(benchmark::State& state) {
  auto g = grid(1, 64, 6, static_cast<std::size_t>(state.range(0)));
  auto vg = std::make_shared<const VelocityGrid>(g->velocity());
  const auto K = build_kernel(AngularProfile::forward_peaked(3.0), vg, 1.0);
  const auto f = field(g);
  for (auto _ : state) benchmark::DoNotOptimize(apply_Q2(f, K));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->size()));
}
BENCHMARK(BM_Q2)->Arg(16)->Arg(32)->Arg(64);

void BM_Advect(benchmark::State& state) {
  auto g = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 4, 16);
  const auto f = field(g);
  for (auto _ : state) benchmark::DoNotOptimize(advect(f, 0.013));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->size()));
}
BENCHMARK(BM_Advect)->Args({1, 256})->Args({2, 32})->Args({3, 12});

void BM_DuhamelSweep(benchmark::State& state) {
  auto g = grid(1, static_cast<int>(state.range(0)), 6, 32);
  auto vg = std::make_shared<const VelocityGrid>(g->velocity());
  const auto K = build_kernel(AngularProfile::isotropic(), vg, 1.0);
  const auto f0 = field(g);
  PicardConfig cfg;
  cfg.horizon = 0.5;
  cfg.steps = static_cast<std::size_t>(state.range(1));
  const Trajectory seed = zero_trajectory(g, cfg);
  const Trajectory first = duhamel_apply(seed, f0, K, DampingModel::linear(0.5), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(duhamel_apply(first, f0, K, DampingModel::linear(0.5), cfg));
}
BENCHMARK(BM_DuhamelSweep)->Args({16, 25})->Args({32, 50})->Unit(benchmark::kMillisecond);

void BM_PhaseIntegral(benchmark::State& state) {
  auto g = grid(2, static_cast<int>(state.range(0)), 6, 32);
  const auto f = field(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_integral(f, [](const Vec3&, const Vec3& xi) { return 1.0 + dot(xi, xi); }));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->size()));
}
BENCHMARK(BM_PhaseIntegral)->Arg(16)->Arg(32);

}  // namespace
BENCHMARK_MAIN();
