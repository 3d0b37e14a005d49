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

#include "uduo/pacing.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <ostream>
#include <string>

#include "uduo/error.h"
#include "uduo/instance_io.h"

namespace uduo {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

// Forward real-to-complex transform of length n, returning n/2+1 bins.
std::vector<std::complex<double>> RealDft(const std::vector<double>& input) {
  const int n = static_cast<int>(input.size());
  std::vector<double> in = input;
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

// Inverse of RealDft, normalized.
std::vector<double> InverseRealDft(std::vector<std::complex<double>> bins,
                                   int n) {
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(bins.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan);
  }
  for (double& v : out) v /= n;
  return out;
}

// Writes total * share_t for every slot but the last, which takes the residue.
BudgetPlan PlanFromShares(double total, const std::vector<double>& shares) {
  BudgetPlan plan;
  plan.total = total;
  plan.slot_budgets.resize(shares.size());
  double sum = 0.0;
  for (size_t t = 0; t + 1 < shares.size(); ++t) {
    plan.slot_budgets[t] = total * shares[t];
    sum += plan.slot_budgets[t];
  }
  plan.slot_budgets.back() = std::max(0.0, total - sum);
  return plan;
}

}  // namespace

void ValidateHistory(const ConsumptionHistory& history) {
  if (history.slots_per_day < 1) {
    throw Error(ErrorCode::kInvalidHistory, "slots_per_day must be >= 1");
  }
  if (history.slot_rates.empty() ||
      history.slot_rates.size() % history.slots_per_day != 0) {
    throw Error(ErrorCode::kInvalidHistory,
                "history length " + std::to_string(history.slot_rates.size()) +
                    " is not a positive multiple of " +
                    std::to_string(history.slots_per_day));
  }
  for (double r : history.slot_rates) {
    if (!std::isfinite(r) || r < 0.0) {
      throw Error(ErrorCode::kInvalidHistory,
                  "rates must be finite and non-negative");
    }
  }
}

BudgetPlan UniformPlan(double total_budget, int slot_count) {
  if (slot_count < 1) {
    throw Error(ErrorCode::kInvalidSlot, "slot_count must be >= 1");
  }
  BudgetPlan plan;
  plan.total = total_budget;
  plan.slot_budgets.assign(slot_count, total_budget / slot_count);
  double sum = 0.0;
  for (int t = 0; t + 1 < slot_count; ++t) sum += plan.slot_budgets[t];
  plan.slot_budgets.back() = total_budget - sum;
  return plan;
}

SpectrumReport Periodogram(const ConsumptionHistory& history) {
  const int n = static_cast<int>(history.slot_rates.size());
  if (n < 4) {
    throw Error(ErrorCode::kTooShort,
                "periodogram needs >= 4 samples, got " + std::to_string(n));
  }
  double mean = 0.0;
  for (double r : history.slot_rates) mean += r;
  mean /= n;
  std::vector<double> centered(n);
  for (int i = 0; i < n; ++i) centered[i] = history.slot_rates[i] - mean;

  const auto bins = RealDft(centered);
  double total = 0.0;
  double best_power = -1.0;
  int best_bin = 1;
  for (int k = 1; k <= n / 2; ++k) {
    const double power = std::norm(bins[k]);
    total += power;
    // Strict comparison keeps the lowest bin, i.e. the longest period.
    if (power > best_power) {
      best_power = power;
      best_bin = k;
    }
  }
  SpectrumReport report;
  report.dominant_period = static_cast<int>(
      std::lround(static_cast<double>(n) / best_bin));
  // Centering leaves roundoff-level power behind for a constant series.
  const double scale = std::max(1.0, std::abs(mean)) * n;
  if (total <= 1e-24 * scale * scale) {
    report.power_fraction = 0.0;
  } else {
    report.power_fraction = best_power / total;
  }
  return report;
}

std::vector<double> SmoothedDailyProfile(const ConsumptionHistory& history) {
  ValidateHistory(history);
  const int period = history.slots_per_day;
  const int days = history.days();
  std::vector<double> profile(period, 0.0);
  for (int d = 0; d < days; ++d) {
    for (int t = 0; t < period; ++t) {
      profile[t] += history.slot_rates[static_cast<size_t>(d) * period + t];
    }
  }
  for (double& p : profile) p /= days;
  if (period < 2) return profile;

  auto bins = RealDft(profile);
  double non_dc = 0.0;
  for (int k = 1; k <= period / 2; ++k) non_dc += std::norm(bins[k]);
  const double dc_scale = std::max(std::abs(bins[0].real()), 1e-300);
  bool kept_any = false;
  if (non_dc > 1e-24 * dc_scale * dc_scale) {
    for (int k = 1; k <= period / 2; ++k) {
      if (std::norm(bins[k]) >= kSmoothingPowerThreshold * non_dc) {
        kept_any = true;
      } else {
        bins[k] = 0.0;
      }
    }
  }
  if (!kept_any) {
    // Flat profile: every slot equals the mean.
    const double mean = bins[0].real() / period;
    return std::vector<double>(period, mean);
  }
  std::vector<double> smoothed = InverseRealDft(std::move(bins), period);
  for (double& v : smoothed) v = std::max(0.0, v);
  return smoothed;
}

BudgetPlan TemporalPlan(double total_budget, const ConsumptionHistory& history,
                        double floor_fraction) {
  ValidateHistory(history);
  if (!(floor_fraction >= 0.0 && floor_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "floor_fraction must lie in [0, 1]");
  }
  const int period = history.slots_per_day;
  if (floor_fraction == 1.0 || period == 1) {
    return UniformPlan(total_budget, period);
  }
  const std::vector<double> profile = SmoothedDailyProfile(history);
  double mass = 0.0;
  for (double p : profile) mass += p;
  if (!(mass > 0.0)) {
    BudgetPlan plan = UniformPlan(total_budget, period);
    plan.degenerate_profile = true;
    return plan;
  }
  if (std::all_of(profile.begin(), profile.end(),
                  [&](double p) { return p == profile.front(); })) {
    return UniformPlan(total_budget, period);
  }
  std::vector<double> shares(period);
  for (int t = 0; t < period; ++t) {
    shares[t] = (1.0 - floor_fraction) * profile[t] / mass +
                floor_fraction / period;
  }
  return PlanFromShares(total_budget, shares);
}

BudgetPlan ReplanRemaining(const BudgetPlan& plan, double spent_so_far,
                           int current_slot) {
  const int slots = plan.slot_count();
  if (current_slot < 0 || current_slot >= slots) {
    throw Error(ErrorCode::kInvalidSlot,
                "slot " + std::to_string(current_slot) + " outside [0, " +
                    std::to_string(slots) + ")");
  }
  const double remaining = std::max(0.0, plan.total - spent_so_far);
  double future = 0.0;
  for (int t = current_slot; t < slots; ++t) future += plan.slot_budgets[t];
  BudgetPlan out = plan;
  if (future == remaining) return out;

  const int last = slots - 1;
  double sum = 0.0;
  if (future > 0.0) {
    const double scale = remaining / future;
    for (int t = current_slot; t < last; ++t) {
      out.slot_budgets[t] = plan.slot_budgets[t] * scale;
      sum += out.slot_budgets[t];
    }
  } else {
    const double each = remaining / (slots - current_slot);
    for (int t = current_slot; t < last; ++t) {
      out.slot_budgets[t] = each;
      sum += each;
    }
  }
  out.slot_budgets[last] = std::max(0.0, remaining - sum);
  return out;
}

void WritePlanCsv(std::ostream& out, const BudgetPlan& plan) {
  out << "slot_index,budget\n";
  for (int t = 0; t < plan.slot_count(); ++t) {
    out << t << ',' << FormatReal(plan.slot_budgets[t]) << '\n';
  }
}

}  // namespace uduo
