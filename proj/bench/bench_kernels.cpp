// Serial reference vs OpenMP for each kernel. Arg(0) selects serial, Arg(1)
// parallel; the second argument is the problem size.

#include <cstddef>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mrtlb/kernels.hpp"

using namespace mrtlb;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void BM_FourLevel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto a = noise(n, 1), b = noise(n, 2);
  auto c = noise(n, 3);
  const kernels::FourLevelArgs args{a, b, c, coefficients(0.83, 0.92, 1.15), 0.0, true};
  for (auto _ : state) {
    kernels::four_level(args, exec_of(state));
    benchmark::DoNotOptimize(c.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_LbmStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto fm = noise(n, 1), f0 = noise(n, 2), fp = noise(n, 3);
  std::vector<double> om(n), o0(n), op(n);
  const kernels::LbmArgs args{fm, f0, fp, om, o0, op, 0.83, 0.085, 0.92, 1.15, 1e-3, 0.0};
  for (auto _ : state) {
    kernels::lbm_step(args, exec_of(state));
    benchmark::DoNotOptimize(om.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_ThetaScan(benchmark::State& state) {
  const int n_theta = static_cast<int>(state.range(1));
  std::vector<double> radius(n_theta + 1), margin(n_theta + 1);
  const kernels::ThetaScanArgs args{0.83, 0.92, 1.15, n_theta, radius, margin};
  for (auto _ : state) {
    kernels::theta_scan(args, exec_of(state));
    benchmark::DoNotOptimize(radius.data());
  }
  state.SetItemsProcessed(state.iterations() * (n_theta + 1));
}

}  // namespace

BENCHMARK(BM_FourLevel)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16, 1 << 20}});
BENCHMARK(BM_LbmStep)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16, 1 << 20}});
BENCHMARK(BM_ThetaScan)->ArgsProduct({{0, 1}, {720, 1 << 14}});

BENCHMARK_MAIN();
