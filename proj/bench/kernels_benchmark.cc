// Copyright 2026 The UDuo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial against OpenMP versions of the hot kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "uduo/core_model.h"
#include "uduo/kernels.h"
#include "uduo/simulator.h"

namespace uduo {
namespace {

StreamConfig BenchStream(double users_per_slot) {
  StreamConfig c;
  c.seed = 42;
  c.slots_per_day = 96;
  c.regime = Regime::kDiurnalPeaks;
  c.base_rate = users_per_slot;
  c.sin_amplitude = 0.4;
  c.archetypes = {{{0.30, 0.55, 0.75}, {0.20, 0.50, 0.90}, 0.25},
                  {{0.90, 1.50, 1.90}, {0.30, 0.60, 1.00}, 0.25}};
  return c;
}

std::vector<UserResponse> RandomUsers(int n, int treatments, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UserResponse> users(n);
  for (int i = 0; i < n; ++i) {
    users[i].user_id = i;
    users[i].rewards = {0.0};
    users[i].costs = {0.0};
    for (int j = 0; j < treatments; ++j) {
      users[i].rewards.push_back(unit(rng));
      users[i].costs.push_back(unit(rng));
    }
  }
  return users;
}

double CostSum(const std::vector<UserResponse>& users) {
  double s = 0.0;
  for (const auto& u : users) {
    for (double c : u.costs) s += c;
  }
  return s;
}

template <auto Kernel>
void BM_ArrivalMatrix(benchmark::State& state) {
  const SlottedUsers stream =
      GenerateStream(BenchStream(static_cast<double>(state.range(0))));
  const LambdaGrid grid = BuildGrid(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(stream, grid));
  }
  state.SetItemsProcessed(state.iterations() * 96 * state.range(0));
}
BENCHMARK(BM_ArrivalMatrix<kernels::ArrivalMatrixSerial>)
    ->Name("ArrivalMatrix/serial")
    ->Arg(50)
    ->Arg(500);
BENCHMARK(BM_ArrivalMatrix<kernels::ArrivalMatrixParallel>)
    ->Name("ArrivalMatrix/parallel")
    ->Arg(50)
    ->Arg(500)
    ->UseRealTime();

template <auto Kernel>
void BM_Enumerate(benchmark::State& state) {
  const auto users = RandomUsers(static_cast<int>(state.range(0)), 3, 7);
  const double budget = 0.3 * CostSum(users);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(users, budget));
  }
}
BENCHMARK(BM_Enumerate<kernels::EnumerateSerial>)
    ->Name("Enumerate/serial")
    ->Arg(8)
    ->Arg(10)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate<kernels::EnumerateParallel>)
    ->Name("Enumerate/parallel")
    ->Arg(8)
    ->Arg(10)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

template <auto Kernel>
void BM_DenseMin(benchmark::State& state) {
  const auto users = RandomUsers(static_cast<int>(state.range(0)), 3, 11);
  const double budget = 0.3 * CostSum(users);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(users, budget, 1e-4, 5.0));
  }
}
BENCHMARK(BM_DenseMin<kernels::DenseMinSerial>)
    ->Name("DenseMin/serial")
    ->Arg(10)
    ->Arg(100)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseMin<kernels::DenseMinParallel>)
    ->Name("DenseMin/parallel")
    ->Arg(10)
    ->Arg(100)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace
}  // namespace uduo

BENCHMARK_MAIN();
