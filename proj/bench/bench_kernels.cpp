// Parallel kernels against their serial references.
//
//   ./spevo_bench --benchmark_filter=Rayleigh
//   Thread count follows OMP_NUM_THREADS.

#include "spevo/reference.hpp"
#include "spevo/spectral.hpp"
#include "spevo/trajectory.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using spevo::Matrix;

std::vector<Matrix> cumulative_snapshots(int n, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Matrix> out;
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < t; ++i) {
    for (int r = 0; r < n; ++r) {
      for (int c = r + 1; c < n; ++c) {
        if (unit(rng) < 0.01) a(r, c) = a(c, r) = 1.0;
      }
    }
    out.push_back(a);
  }
  return out;
}

void BM_RayleighParallel(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto snaps = cumulative_snapshots(n, 10, 1);
  const Matrix basis = spevo::decompose(snaps.back()).eigenvectors;
  for (auto _ : state) benchmark::DoNotOptimize(spevo::rayleigh_trajectory_matrix(snaps, basis));
}

void BM_RayleighSerial(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto snaps = cumulative_snapshots(n, 10, 1);
  const Matrix basis = spevo::decompose(snaps.back()).eigenvectors;
  for (auto _ : state) benchmark::DoNotOptimize(spevo::reference::rayleigh_trajectory_matrix(snaps, basis));
}

void BM_DecomposeAllParallel(benchmark::State& state) {
  const auto snaps = cumulative_snapshots(static_cast<int>(state.range(0)), 10, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spevo::decompose_all(snaps));
}

void BM_DecomposeAllSerial(benchmark::State& state) {
  const auto snaps = cumulative_snapshots(static_cast<int>(state.range(0)), 10, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spevo::reference::decompose_all(snaps));
}

}  // namespace

BENCHMARK(BM_RayleighParallel)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RayleighSerial)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeAllParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeAllSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
