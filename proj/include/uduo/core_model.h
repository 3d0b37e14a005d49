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

// Domain types for budget-constrained treatment allocation.
//
// A user i receives reward r_ij and incurs cost c_ij when assigned treatment
// j. Treatment 0 is always the null treatment ("offer nothing") with
// r = c = 0, which makes the per-user argmax of r - lambda * c total and keeps
// every arrival value non-negative.

#ifndef UDUO_CORE_MODEL_H_
#define UDUO_CORE_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

namespace uduo {

struct TreatmentCatalog {
  int count = 1;
  // When true, index 0 is the null treatment.
  bool includes_null = true;

  bool operator==(const TreatmentCatalog&) const = default;
};

struct UserResponse {
  int64_t user_id = 0;
  // Slot units: slot t covers [t, t+1).
  double arrival_time = 0.0;
  std::vector<double> rewards;
  std::vector<double> costs;

  int num_treatments() const { return static_cast<int>(rewards.size()); }
  bool operator==(const UserResponse&) const = default;
};

struct AllocationInstance {
  std::vector<UserResponse> users;
  TreatmentCatalog catalog;
  double budget = 0.0;

  bool operator==(const AllocationInstance&) const = default;
};

// Users grouped by time slot; element t holds the users arriving in slot t.
using SlottedUsers = std::vector<std::vector<UserResponse>>;

// Returns the instance with the null treatment injected at index 0 when the
// catalog does not already include it. Throws Error with kNegativeCost,
// kDimensionMismatch, kNegativeBudget, kInvalidNullTreatment or kNonFinite.
// Idempotent.
AllocationInstance ValidateInstance(AllocationInstance instance);

// Validates a single user against a catalog that already includes the null
// treatment.
void ValidateUser(const UserResponse& user, int treatment_count);

// Prepends the null treatment to a user's reward and cost vectors.
UserResponse WithNullTreatment(UserResponse user);

// Uniformly spaced dual-variable domain {lambda_low + k * epsilon}, k=0..K.
class LambdaGrid {
 public:
  LambdaGrid(double lambda_low, double epsilon, int k_count);

  double lambda_low() const { return lambda_low_; }
  double epsilon() const { return epsilon_; }
  int k_count() const { return k_count_; }
  int size() const { return k_count_ + 1; }
  double value(int k) const { return lambda_low_ + k * epsilon_; }
  double max_value() const { return value(k_count_); }
  std::vector<double> values() const;

  bool operator==(const LambdaGrid&) const = default;

 private:
  double lambda_low_;
  double epsilon_;
  int k_count_;
};

inline constexpr double kDefaultGridEpsilon = 0.01;
inline constexpr int kDefaultGridK = 100;

// Centers a grid of K+1 points on `lambda_warm`. When the window would reach
// below zero it is shifted up to start at 0, keeping the spacing.
LambdaGrid BuildGrid(double lambda_warm, double epsilon = kDefaultGridEpsilon,
                     int k_count = kDefaultGridK);

// T x (K+1) matrix of arrival values v_t(lambda_k), row-major.
class ArrivalVectorSeries {
 public:
  ArrivalVectorSeries(int slot_count, LambdaGrid grid);
  ArrivalVectorSeries(int slot_count, LambdaGrid grid,
                      std::vector<double> matrix);

  int slot_count() const { return slot_count_; }
  const LambdaGrid& grid() const { return grid_; }
  int width() const { return grid_.size(); }

  double at(int t, int k) const { return matrix_[Index(t, k)]; }
  double& at(int t, int k) { return matrix_[Index(t, k)]; }
  std::span<const double> row(int t) const {
    return {matrix_.data() + static_cast<size_t>(t) * width(),
            static_cast<size_t>(width())};
  }
  std::vector<double> row_copy(int t) const {
    auto r = row(t);
    return {r.begin(), r.end()};
  }
  const std::vector<double>& matrix() const { return matrix_; }

  bool operator==(const ArrivalVectorSeries&) const = default;

 private:
  size_t Index(int t, int k) const {
    return static_cast<size_t>(t) * width() + k;
  }

  int slot_count_;
  LambdaGrid grid_;
  std::vector<double> matrix_;
};

// Relative tolerance for monotonicity and convexity checks on piecewise-linear
// sums evaluated in double precision.
inline constexpr double kShapeTolerance = 1e-9;

// True when the row is non-negative, non-increasing and convex in k, all
// within kShapeTolerance * max(1, max|row|).
bool RowHasArrivalShape(std::span<const double> row);

struct BudgetPlan {
  std::vector<double> slot_budgets;
  double total = 0.0;
  // Set when a temporal plan fell back to uniform on a degenerate (all-zero)
  // consumption profile.
  bool degenerate_profile = false;

  int slot_count() const { return static_cast<int>(slot_budgets.size()); }
  double Sum() const;
  bool operator==(const BudgetPlan&) const = default;
};

// Sum of slot budgets does not exceed total (relative 1e-9) and every slot is
// non-negative.
bool PlanIsFeasible(const BudgetPlan& plan);

}  // namespace uduo

#endif  // UDUO_CORE_MODEL_H_
