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

// Lagrangian dual of the single-budget allocation LP.
//
// Relaxing the budget constraint with multiplier lambda >= 0 gives
//   L(lambda) = lambda * B + v(lambda),
//   v(lambda) = sum_i max_j (r_ij - lambda * c_ij),
// a convex piecewise-linear function. Its subgradient at lambda is
// B - sum_i c_{i, j*(lambda)}, where j* is the per-user best response.
// All functions here expect users that already include the null treatment.

#ifndef UDUO_DUAL_SOLVER_H_
#define UDUO_DUAL_SOLVER_H_

#include <optional>
#include <span>
#include <vector>

#include "uduo/core_model.h"

namespace uduo {

struct BestResponse {
  int treatment_index = 0;
  // r - lambda * c of the chosen treatment; never negative.
  double score = 0.0;
  double cost = 0.0;
  double reward = 0.0;
};

// argmax_j r_j - lambda * c_j. Ties go to the lower cost, then the lower index.
BestResponse ComputeBestResponse(const UserResponse& user, double lambda);

// Same argmax restricted to treatments with cost <= cap. The null treatment is
// always affordable, so this is total for cap >= 0.
BestResponse ComputeAffordableResponse(const UserResponse& user, double lambda,
                                       double cap);

// v(lambda), summed in user order.
double ArrivalValue(std::span<const UserResponse> users, double lambda);

// One series row: v(lambda_k) for every grid point.
std::vector<double> ArrivalRow(std::span<const UserResponse> users,
                               const LambdaGrid& grid);

// V = {v_t(lambda_k)}. Cells are evaluated in parallel; each cell sums its
// slot's users in order, so the result does not depend on the schedule.
ArrivalVectorSeries ArrivalSeries(const SlottedUsers& slotted,
                                  const LambdaGrid& grid);

double DualObjective(double lambda, double budget,
                     std::span<const UserResponse> users);

double DualSubgradient(double lambda, double budget,
                       std::span<const UserResponse> users);

// Largest r/c over positive-cost treatments (0 if none), plus `pad`. Beyond
// this every user selects a zero-cost treatment, so the subgradient equals
// the budget.
double DefaultLambdaMax(std::span<const UserResponse> users, double pad);

struct DualSolution {
  double lambda_star = 0.0;
  double objective = 0.0;
  int iterations = 0;
  double subgradient_at_solution = 0.0;
};

// Bisection on the sign of the subgradient over [0, lambda_max]. Returns
// lambda = 0 with zero iterations when the budget does not bind. Throws
// kNoBracket if the subgradient is still negative at lambda_max.
DualSolution SolveBisect(std::span<const UserResponse> users, double budget,
                         double tolerance,
                         std::optional<double> lambda_max = std::nullopt);

// argmin_k lambda_k * slot_budget + row[k] over a convex row, by binary search
// on the sign of forward differences. Ties go to the smaller lambda.
DualSolution SolveGrid(std::span<const double> row, const LambdaGrid& grid,
                       double slot_budget);

// Projected dual descent: max(0, lambda + step * (observed - target)).
double OgdStep(double lambda, double observed_cost, double target_rate,
               double step_size);

}  // namespace uduo

#endif  // UDUO_DUAL_SOLVER_H_
