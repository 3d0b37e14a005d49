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

// Budget pacing: splitting a daily budget into per-slot budgets.

#ifndef UDUO_PACING_H_
#define UDUO_PACING_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "uduo/core_model.h"

namespace uduo {

struct ConsumptionHistory {
  // Spend or traffic per slot over D whole days, oldest first.
  std::vector<double> slot_rates;
  int slots_per_day = 1;

  int days() const {
    return static_cast<int>(slot_rates.size()) / slots_per_day;
  }
};

// Throws kInvalidHistory unless the length is a positive multiple of
// slots_per_day and every rate is finite and non-negative.
void ValidateHistory(const ConsumptionHistory& history);

struct SpectrumReport {
  int dominant_period = 2;
  // Dominant bin power over total non-DC power; 0 for a flat series.
  double power_fraction = 0.0;
};

inline constexpr double kDefaultFloorFraction = 0.1;
// Fourier bins below this share of non-DC power are dropped when smoothing.
inline constexpr double kSmoothingPowerThreshold = 0.05;

// total / slot_count per slot; the last slot absorbs the rounding residue so
// the left-to-right sum is exactly `total`.
BudgetPlan UniformPlan(double total_budget, int slot_count);

// Magnitude spectrum of the mean-removed series. The dominant period is
// round(N / k) for the strongest bin k >= 1; ties go to the longer period.
// Throws kTooShort below 4 samples.
SpectrumReport Periodogram(const ConsumptionHistory& history);

// Average per-day profile, low-pass smoothed in the Fourier domain, clipped at
// zero and mixed with uniform:
//   share_t = (1 - f) * profile_t / sum(profile) + f / T.
// A flat profile or f = 1 yields UniformPlan exactly; an all-zero history falls
// back to uniform with degenerate_profile set.
BudgetPlan TemporalPlan(double total_budget, const ConsumptionHistory& history,
                        double floor_fraction = kDefaultFloorFraction);

// The smoothed, clipped per-day profile used by TemporalPlan.
std::vector<double> SmoothedDailyProfile(const ConsumptionHistory& history);

// Rescales slots >= current_slot so they sum to max(0, total - spent_so_far).
// Earlier slots keep their planned values. If the future slots were all zero,
// the remainder is spread uniformly over them. Throws kInvalidSlot.
BudgetPlan ReplanRemaining(const BudgetPlan& plan, double spent_so_far,
                           int current_slot);

// CSV "slot_index,budget" with a header line.
void WritePlanCsv(std::ostream& out, const BudgetPlan& plan);

}  // namespace uduo

#endif  // UDUO_PACING_H_
