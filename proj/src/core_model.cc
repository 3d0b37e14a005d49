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

#include "uduo/core_model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "uduo/error.h"

namespace uduo {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNegativeBudget: return "NegativeBudget";
    case ErrorCode::kInvalidNullTreatment: return "InvalidNullTreatment";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kInvalidStep: return "InvalidStep";
    case ErrorCode::kNoBracket: return "NoBracket";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kInvalidHistory: return "InvalidHistory";
    case ErrorCode::kInvalidSlot: return "InvalidSlot";
    case ErrorCode::kInsufficientHistory: return "InsufficientHistory";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kServiceUnavailable: return "ServiceUnavailable";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kInvalidRegimeParams: return "InvalidRegimeParams";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

void ValidateUser(const UserResponse& user, int treatment_count) {
  const std::string who = "user " + std::to_string(user.user_id);
  if (user.num_treatments() != treatment_count ||
      static_cast<int>(user.costs.size()) != treatment_count) {
    throw Error(ErrorCode::kDimensionMismatch,
                who + " has " + std::to_string(user.rewards.size()) +
                    " rewards and " + std::to_string(user.costs.size()) +
                    " costs, catalog has " + std::to_string(treatment_count));
  }
  if (!std::isfinite(user.arrival_time)) {
    throw Error(ErrorCode::kNonFinite, who + " arrival_time");
  }
  for (int j = 0; j < treatment_count; ++j) {
    if (!std::isfinite(user.rewards[j]) || !std::isfinite(user.costs[j])) {
      throw Error(ErrorCode::kNonFinite,
                  who + " treatment " + std::to_string(j));
    }
    if (user.costs[j] < 0.0) {
      throw Error(ErrorCode::kNegativeCost,
                  who + " treatment " + std::to_string(j) + " cost " +
                      std::to_string(user.costs[j]));
    }
  }
  if (user.rewards[0] != 0.0 || user.costs[0] != 0.0) {
    throw Error(ErrorCode::kInvalidNullTreatment,
                who + " has non-zero reward or cost on the null treatment");
  }
}

UserResponse WithNullTreatment(UserResponse user) {
  user.rewards.insert(user.rewards.begin(), 0.0);
  user.costs.insert(user.costs.begin(), 0.0);
  return user;
}

AllocationInstance ValidateInstance(AllocationInstance instance) {
  if (!std::isfinite(instance.budget)) {
    throw Error(ErrorCode::kNonFinite, "budget");
  }
  if (instance.budget < 0.0) {
    throw Error(ErrorCode::kNegativeBudget,
                "budget " + std::to_string(instance.budget));
  }
  if (instance.catalog.count < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "catalog count must be >= 1");
  }
  if (!instance.catalog.includes_null) {
    // Dimensions are checked against the pre-injection count so that the
    // error names what the caller supplied.
    for (const UserResponse& user : instance.users) {
      if (user.num_treatments() != instance.catalog.count ||
          static_cast<int>(user.costs.size()) != instance.catalog.count) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "user " + std::to_string(user.user_id) + " has " +
                        std::to_string(user.rewards.size()) + " rewards and " +
                        std::to_string(user.costs.size()) +
                        " costs, catalog has " +
                        std::to_string(instance.catalog.count));
      }
    }
    for (UserResponse& user : instance.users) {
      user = WithNullTreatment(std::move(user));
    }
    instance.catalog.count += 1;
    instance.catalog.includes_null = true;
  }
  for (const UserResponse& user : instance.users) {
    ValidateUser(user, instance.catalog.count);
  }
  return instance;
}

LambdaGrid::LambdaGrid(double lambda_low, double epsilon, int k_count)
    : lambda_low_(lambda_low), epsilon_(epsilon), k_count_(k_count) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidStep,
                "epsilon must be positive, got " + std::to_string(epsilon));
  }
  if (k_count < 1) {
    throw Error(ErrorCode::kInvalidStep, "k_count must be >= 1");
  }
  if (!(lambda_low >= 0.0) || !std::isfinite(lambda_low)) {
    throw Error(ErrorCode::kInvalidStep, "lambda_low must be non-negative");
  }
}

std::vector<double> LambdaGrid::values() const {
  std::vector<double> out(size());
  for (int k = 0; k < size(); ++k) out[k] = value(k);
  return out;
}

LambdaGrid BuildGrid(double lambda_warm, double epsilon, int k_count) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidStep,
                "epsilon must be positive, got " + std::to_string(epsilon));
  }
  if (!(lambda_warm >= 0.0) || !std::isfinite(lambda_warm)) {
    throw Error(ErrorCode::kInvalidStep, "lambda_warm must be non-negative");
  }
  const double low = lambda_warm - (k_count / 2.0) * epsilon;
  return LambdaGrid(std::max(0.0, low), epsilon, k_count);
}

ArrivalVectorSeries::ArrivalVectorSeries(int slot_count, LambdaGrid grid)
    : slot_count_(slot_count),
      grid_(grid),
      matrix_(static_cast<size_t>(slot_count) * grid.size(), 0.0) {}

ArrivalVectorSeries::ArrivalVectorSeries(int slot_count, LambdaGrid grid,
                                         std::vector<double> matrix)
    : slot_count_(slot_count), grid_(grid), matrix_(std::move(matrix)) {
  if (matrix_.size() != static_cast<size_t>(slot_count) * grid_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "series matrix size");
  }
}

bool RowHasArrivalShape(std::span<const double> row) {
  double scale = 1.0;
  for (double v : row) scale = std::max(scale, std::abs(v));
  const double tol = kShapeTolerance * scale;
  for (size_t k = 0; k < row.size(); ++k) {
    if (!(row[k] >= -tol)) return false;
    if (k + 1 < row.size() && row[k + 1] > row[k] + tol) return false;
    if (k >= 1 && k + 1 < row.size() &&
        row[k + 1] - 2.0 * row[k] + row[k - 1] < -tol) {
      return false;
    }
  }
  return true;
}

double BudgetPlan::Sum() const {
  double sum = 0.0;
  for (double b : slot_budgets) sum += b;
  return sum;
}

bool PlanIsFeasible(const BudgetPlan& plan) {
  for (double b : plan.slot_budgets) {
    if (!(b >= 0.0)) return false;
  }
  return plan.Sum() <= plan.total + 1e-9 * plan.total;
}

}  // namespace uduo
