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

#include "uduo/dual_solver.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "uduo/error.h"
#include "uduo/kernels.h"

namespace uduo {

namespace {

// Candidate j beats the incumbent on higher score, then on lower cost. Index
// order is implied by scanning j upwards.
inline bool Beats(double score, double cost, const BestResponse& incumbent) {
  return score > incumbent.score ||
         (score == incumbent.score && cost < incumbent.cost);
}

}  // namespace

BestResponse ComputeBestResponse(const UserResponse& user, double lambda) {
  BestResponse best;
  best.treatment_index = 0;
  best.reward = user.rewards[0];
  best.cost = user.costs[0];
  best.score = best.reward - lambda * best.cost;
  const int n = user.num_treatments();
  for (int j = 1; j < n; ++j) {
    const double score = user.rewards[j] - lambda * user.costs[j];
    if (Beats(score, user.costs[j], best)) {
      best = {j, score, user.costs[j], user.rewards[j]};
    }
  }
  return best;
}

BestResponse ComputeAffordableResponse(const UserResponse& user, double lambda,
                                       double cap) {
  BestResponse best;
  best.treatment_index = 0;
  best.reward = user.rewards[0];
  best.cost = user.costs[0];
  best.score = best.reward - lambda * best.cost;
  const int n = user.num_treatments();
  for (int j = 1; j < n; ++j) {
    if (user.costs[j] > cap) continue;
    const double score = user.rewards[j] - lambda * user.costs[j];
    if (Beats(score, user.costs[j], best)) {
      best = {j, score, user.costs[j], user.rewards[j]};
    }
  }
  return best;
}

double ArrivalValue(std::span<const UserResponse> users, double lambda) {
  double sum = 0.0;
  for (const UserResponse& user : users) {
    sum += ComputeBestResponse(user, lambda).score;
  }
  return sum;
}

std::vector<double> ArrivalRow(std::span<const UserResponse> users,
                               const LambdaGrid& grid) {
  std::vector<double> row(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    row[k] = ArrivalValue(users, grid.value(k));
  }
  return row;
}

ArrivalVectorSeries ArrivalSeries(const SlottedUsers& slotted,
                                  const LambdaGrid& grid) {
  return ArrivalVectorSeries(static_cast<int>(slotted.size()), grid,
                             kernels::ArrivalMatrixParallel(slotted, grid));
}

double DualObjective(double lambda, double budget,
                     std::span<const UserResponse> users) {
  return lambda * budget + ArrivalValue(users, lambda);
}

double DualSubgradient(double lambda, double budget,
                       std::span<const UserResponse> users) {
  double spend = 0.0;
  for (const UserResponse& user : users) {
    spend += ComputeBestResponse(user, lambda).cost;
  }
  return budget - spend;
}

double DefaultLambdaMax(std::span<const UserResponse> users, double pad) {
  double ratio = 0.0;
  for (const UserResponse& user : users) {
    for (int j = 0; j < user.num_treatments(); ++j) {
      if (user.costs[j] > 0.0) {
        ratio = std::max(ratio, user.rewards[j] / user.costs[j]);
      }
    }
  }
  return ratio + pad;
}

DualSolution SolveBisect(std::span<const UserResponse> users, double budget,
                         double tolerance, std::optional<double> lambda_max) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidStep, "tolerance must be positive");
  }
  DualSolution solution;
  const double g0 = DualSubgradient(0.0, budget, users);
  if (g0 >= 0.0) {
    solution.lambda_star = 0.0;
    solution.objective = DualObjective(0.0, budget, users);
    solution.subgradient_at_solution = g0;
    return solution;
  }
  double hi = lambda_max.value_or(DefaultLambdaMax(users, tolerance));
  if (DualSubgradient(hi, budget, users) < 0.0) {
    throw Error(ErrorCode::kNoBracket,
                "subgradient negative at lambda_max " + std::to_string(hi));
  }
  // Invariant: g(lo) < 0 <= g(hi); g is non-decreasing.
  double lo = 0.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++solution.iterations;
    if (DualSubgradient(mid, budget, users) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  solution.lambda_star = 0.5 * (lo + hi);
  solution.objective = DualObjective(solution.lambda_star, budget, users);
  solution.subgradient_at_solution =
      DualSubgradient(solution.lambda_star, budget, users);
  return solution;
}

DualSolution SolveGrid(std::span<const double> row, const LambdaGrid& grid,
                       double slot_budget) {
  if (static_cast<int>(row.size()) != grid.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "row has " + std::to_string(row.size()) + " entries, grid has " +
                    std::to_string(grid.size()));
  }
  auto objective = [&](int k) { return grid.value(k) * slot_budget + row[k]; };
  DualSolution solution;
  // Smallest k with f(k+1) >= f(k); forward differences are non-decreasing on
  // a convex row, so the predicate is monotone.
  int lo = 0;
  int hi = grid.k_count();
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    ++solution.iterations;
    if (objective(mid + 1) >= objective(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  solution.lambda_star = grid.value(lo);
  solution.objective = objective(lo);
  // Finite-difference slope of v at the chosen point stands in for the spend.
  const double slope = lo < grid.k_count()
                           ? (row[lo] - row[lo + 1]) / grid.epsilon()
                           : (row[lo - 1] - row[lo]) / grid.epsilon();
  solution.subgradient_at_solution = slot_budget - slope;
  return solution;
}

double OgdStep(double lambda, double observed_cost, double target_rate,
               double step_size) {
  return std::max(0.0, lambda + step_size * (observed_cost - target_rate));
}

}  // namespace uduo
