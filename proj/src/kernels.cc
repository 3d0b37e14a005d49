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

#include "uduo/kernels.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uduo/dual_solver.h"

namespace uduo::kernels {

std::vector<double> ArrivalMatrixSerial(const SlottedUsers& slotted,
                                        const LambdaGrid& grid) {
  const int slots = static_cast<int>(slotted.size());
  const int width = grid.size();
  std::vector<double> matrix(static_cast<size_t>(slots) * width);
  for (int t = 0; t < slots; ++t) {
    for (int k = 0; k < width; ++k) {
      matrix[static_cast<size_t>(t) * width + k] =
          ArrivalValue(slotted[t], grid.value(k));
    }
  }
  return matrix;
}

std::vector<double> ArrivalMatrixParallel(const SlottedUsers& slotted,
                                          const LambdaGrid& grid) {
  const int slots = static_cast<int>(slotted.size());
  const int width = grid.size();
  const int64_t cells = static_cast<int64_t>(slots) * width;
  std::vector<double> matrix(static_cast<size_t>(cells));
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t cell = 0; cell < cells; ++cell) {
    const int t = static_cast<int>(cell / width);
    const int k = static_cast<int>(cell % width);
    matrix[cell] = ArrivalValue(slotted[t], grid.value(k));
  }
  return matrix;
}

Enumeration EnumerateSerial(std::span<const UserResponse> users,
                            double budget) {
  const int n = static_cast<int>(users.size());
  Enumeration result;
  result.best_value = -std::numeric_limits<double>::infinity();
  result.best_assignment.assign(n, 0);
  std::vector<int> digits(n, 0);
  while (true) {
    ++result.visited;
    double value = 0.0;
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      value += users[i].rewards[digits[i]];
      cost += users[i].costs[digits[i]];
    }
    if (cost <= budget && value > result.best_value) {
      result.best_value = value;
      result.best_assignment = digits;
    }
    int pos = n - 1;
    while (pos >= 0) {
      if (++digits[pos] < users[pos].num_treatments()) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return result;
}

namespace {

struct SearchState {
  std::span<const UserResponse> users;
  double budget;
  std::vector<int> digits;
  Enumeration best;
};

// Leaves are reached in lexicographic order, so keeping only strict
// improvements retains the lexicographically smallest optimum.
void Search(SearchState& state, int depth, double value, double cost) {
  const int n = static_cast<int>(state.users.size());
  if (depth == n) {
    ++state.best.visited;
    if (value > state.best.best_value) {
      state.best.best_value = value;
      state.best.best_assignment = state.digits;
    }
    return;
  }
  const UserResponse& user = state.users[depth];
  for (int j = 0; j < user.num_treatments(); ++j) {
    const double next_cost = cost + user.costs[j];
    // Costs are non-negative, so partial sums never decrease.
    if (next_cost > state.budget) continue;
    state.digits[depth] = j;
    Search(state, depth + 1, value + user.rewards[j], next_cost);
  }
  state.digits[depth] = 0;
}

}  // namespace

Enumeration EnumerateParallel(std::span<const UserResponse> users,
                              double budget) {
  const int n = static_cast<int>(users.size());
  const int prefix_depth = std::min(n, 2);
  int64_t prefixes = 1;
  for (int i = 0; i < prefix_depth; ++i) prefixes *= users[i].num_treatments();

  std::vector<Enumeration> shards(prefixes);
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t p = 0; p < prefixes; ++p) {
    SearchState state{users, budget, std::vector<int>(n, 0), {}};
    state.best.best_value = -std::numeric_limits<double>::infinity();
    // Decode p with user 0 as the most significant digit.
    int64_t rest = p;
    for (int i = prefix_depth - 1; i >= 0; --i) {
      state.digits[i] = static_cast<int>(rest % users[i].num_treatments());
      rest /= users[i].num_treatments();
    }
    double value = 0.0;
    double cost = 0.0;
    bool feasible = true;
    for (int i = 0; i < prefix_depth; ++i) {
      value += users[i].rewards[state.digits[i]];
      cost += users[i].costs[state.digits[i]];
      if (cost > budget) feasible = false;
    }
    if (feasible) Search(state, prefix_depth, value, cost);
    shards[p] = std::move(state.best);
  }

  Enumeration result;
  result.best_value = -std::numeric_limits<double>::infinity();
  result.best_assignment.assign(n, 0);
  for (const Enumeration& shard : shards) {
    result.visited += shard.visited;
    if (shard.best_value > result.best_value) {
      result.best_value = shard.best_value;
      result.best_assignment = shard.best_assignment;
    }
  }
  return result;
}

namespace {

int64_t DensePointCount(double step, double upper) {
  return static_cast<int64_t>(std::floor(upper / step)) + 1;
}

}  // namespace

double DenseMinSerial(std::span<const UserResponse> users, double budget,
                      double step, double upper) {
  const int64_t points = DensePointCount(step, upper);
  double best = DualObjective(upper, budget, users);
  for (int64_t k = 0; k < points; ++k) {
    best = std::min(best, DualObjective(k * step, budget, users));
  }
  return best;
}

double DenseMinParallel(std::span<const UserResponse> users, double budget,
                        double step, double upper) {
  const int64_t points = DensePointCount(step, upper);
  double best = DualObjective(upper, budget, users);
#pragma omp parallel for schedule(static) reduction(min : best)
  for (int64_t k = 0; k < points; ++k) {
    best = std::min(best, DualObjective(k * step, budget, users));
  }
  return best;
}

}  // namespace uduo::kernels
