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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.h"

namespace uduo {
namespace {

using testing::CodeOf;

ConsumptionHistory Sinusoid(int period, int n, double noise_sd,
                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_sd);
  ConsumptionHistory h;
  h.slots_per_day = period;
  for (int t = 0; t < n; ++t) {
    h.slot_rates.push_back(
        10.0 + std::sin(2.0 * std::numbers::pi * t / period) +
        (noise_sd > 0.0 ? noise(rng) : 0.0));
  }
  return h;
}

TEST(UniformPlanTest, ExactDivision) {
  const BudgetPlan p = UniformPlan(240.0, 24);
  ASSERT_EQ(p.slot_count(), 24);
  for (double b : p.slot_budgets) EXPECT_EQ(b, 10.0);
  EXPECT_EQ(p.Sum(), 240.0);
}

TEST(UniformPlanTest, LastSlotAbsorbsResidue) {
  const BudgetPlan p = UniformPlan(1.0, 3);
  EXPECT_EQ(p.slot_budgets[0], 1.0 / 3.0);
  EXPECT_EQ(p.slot_budgets[1], 1.0 / 3.0);
  EXPECT_EQ(p.slot_budgets[2], 1.0 - 2.0 / 3.0);
  EXPECT_EQ(p.slot_budgets[0] + p.slot_budgets[1] + p.slot_budgets[2], 1.0);
}

TEST(UniformPlanTest, ZeroBudget) {
  const BudgetPlan p = UniformPlan(0.0, 5);
  EXPECT_EQ(p.slot_budgets, std::vector<double>(5, 0.0));
}

TEST(PeriodogramTest, PureSinusoidConcentratesInOneBin) {
  const SpectrumReport r = Periodogram(Sinusoid(24, 240, 0.0, 0));
  EXPECT_EQ(r.dominant_period, 24);
  EXPECT_GE(r.power_fraction, 0.99);
}

TEST(PeriodogramTest, ConstantSeriesHasNoPower) {
  ConsumptionHistory h{std::vector<double>(48, 3.0), 24};
  const SpectrumReport r = Periodogram(h);
  EXPECT_EQ(r.power_fraction, 0.0);
  EXPECT_GE(r.dominant_period, 2);
}

TEST(PeriodogramTest, NoisySinusoidRecoveredEverySeed) {
  // SNR 10: signal power 1/2, noise variance 1/20.
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = Sinusoid(24, 240, std::sqrt(0.05), seed);
    EXPECT_EQ(Periodogram(h).dominant_period, 24) << "seed " << seed;
  }
}

TEST(PeriodogramTest, AgreesWithDirectTransform) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    ConsumptionHistory h;
    h.slots_per_day = 8;
    for (int t = 0; t < 8 * (2 + trial % 5); ++t) {
      h.slot_rates.push_back(unit(rng));
    }
    EXPECT_EQ(Periodogram(h).dominant_period,
              testing::NaiveDominantPeriod(h.slot_rates));
  }
}

TEST(PeriodogramTest, TooShort) {
  ConsumptionHistory h{{1.0, 2.0, 3.0}, 3};
  EXPECT_EQ(CodeOf([&] { Periodogram(h); }), ErrorCode::kTooShort);
}

TEST(TemporalPlanTest, FlatHistoryIsUniform) {
  ConsumptionHistory h{std::vector<double>(72, 4.0), 24};
  EXPECT_EQ(TemporalPlan(100.0, h, 0.1), UniformPlan(100.0, 24));
}

TEST(TemporalPlanTest, TwoDayStepProfile) {
  const double f = 0.1;
  ConsumptionHistory h{{0, 0, 10, 10, 0, 0, 10, 10}, 4};
  const BudgetPlan p = TemporalPlan(1.0, h, f);
  const double lo = f / 4.0;
  const double hi = f / 4.0 + (1.0 - f) / 2.0;
  ASSERT_EQ(p.slot_count(), 4);
  EXPECT_NEAR(p.slot_budgets[0], lo, 1e-12);
  EXPECT_NEAR(p.slot_budgets[1], lo, 1e-12);
  EXPECT_NEAR(p.slot_budgets[2], hi, 1e-12);
  EXPECT_NEAR(p.slot_budgets[3], hi, 1e-12);
  EXPECT_EQ(p.Sum(), 1.0);
}

TEST(TemporalPlanTest, FullFloorIsUniform) {
  const auto h = Sinusoid(24, 96, 0.3, 4);
  EXPECT_EQ(TemporalPlan(55.0, h, 1.0), UniformPlan(55.0, 24));
}

TEST(TemporalPlanTest, AllZeroHistoryFallsBack) {
  ConsumptionHistory h{std::vector<double>(48, 0.0), 24};
  const BudgetPlan p = TemporalPlan(10.0, h, 0.1);
  EXPECT_TRUE(p.degenerate_profile);
  EXPECT_EQ(p.slot_budgets, UniformPlan(10.0, 24).slot_budgets);
}

TEST(TemporalPlanTest, InvalidHistory) {
  ConsumptionHistory ragged{std::vector<double>(25, 1.0), 24};
  EXPECT_EQ(CodeOf([&] { TemporalPlan(1.0, ragged, 0.1); }),
            ErrorCode::kInvalidHistory);
  ConsumptionHistory negative{std::vector<double>(24, -1.0), 24};
  EXPECT_EQ(CodeOf([&] { TemporalPlan(1.0, negative, 0.1); }),
            ErrorCode::kInvalidHistory);
}

TEST(TemporalPlanTest, PropertiesOnRandomHistories) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int t_count = 4 + static_cast<int>(rng() % 30);
    const int days = 1 + static_cast<int>(rng() % 4);
    ConsumptionHistory h;
    h.slots_per_day = t_count;
    for (int i = 0; i < t_count * days; ++i) {
      h.slot_rates.push_back(unit(rng) < 0.2 ? 0.0 : 10.0 * unit(rng));
    }
    const double total = 1000.0 * unit(rng);
    const double f = unit(rng) * 0.99;
    const BudgetPlan p = TemporalPlan(total, h, f);
    EXPECT_TRUE(PlanIsFeasible(p));
    EXPECT_LE(p.Sum(), total * (1.0 + 1e-9));
    for (double b : p.slot_budgets) {
      EXPECT_GE(b, f * total / t_count * (1.0 - 1e-12) - 1e-12);
    }
  }
}

TEST(ReplanRemainingTest, OnTrackLeavesFutureUnchanged) {
  const BudgetPlan p = UniformPlan(100.0, 10);
  const BudgetPlan r = ReplanRemaining(p, 20.0, 2);
  for (int t = 0; t < 10; ++t) EXPECT_EQ(r.slot_budgets[t], p.slot_budgets[t]);
}

TEST(ReplanRemainingTest, ExhaustedZeroesFuture) {
  const BudgetPlan r = ReplanRemaining(UniformPlan(100.0, 10), 100.0, 4);
  for (int t = 4; t < 10; ++t) EXPECT_EQ(r.slot_budgets[t], 0.0);
  const BudgetPlan over = ReplanRemaining(UniformPlan(100.0, 10), 130.0, 4);
  for (int t = 4; t < 10; ++t) EXPECT_EQ(over.slot_budgets[t], 0.0);
}

TEST(ReplanRemainingTest, ProportionalRescale) {
  const BudgetPlan r = ReplanRemaining(UniformPlan(100.0, 10), 30.0, 2);
  EXPECT_EQ(r.slot_budgets[0], 10.0);
  EXPECT_EQ(r.slot_budgets[1], 10.0);
  double future = 0.0;
  for (int t = 2; t < 10; ++t) {
    EXPECT_NEAR(r.slot_budgets[t], 8.75, 1e-12);
    future += r.slot_budgets[t];
  }
  EXPECT_NEAR(future, 70.0, 1e-12);
}

TEST(ReplanRemainingTest, InvalidSlot) {
  EXPECT_EQ(CodeOf([] { ReplanRemaining(UniformPlan(1.0, 3), 0.0, 3); }),
            ErrorCode::kInvalidSlot);
  EXPECT_EQ(CodeOf([] { ReplanRemaining(UniformPlan(1.0, 3), 0.0, -1); }),
            ErrorCode::kInvalidSlot);
}

TEST(ReplanRemainingTest, IdempotentAndRemainderFeasible) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = Sinusoid(12, 36, 0.5, trial);
    const BudgetPlan p = TemporalPlan(50.0, h, 0.2);
    const int slot = static_cast<int>(rng() % 12);
    const double spent = 60.0 * unit(rng);
    const BudgetPlan once = ReplanRemaining(p, spent, slot);
    EXPECT_EQ(ReplanRemaining(once, spent, slot), once);
    double future = 0.0;
    for (int t = slot; t < 12; ++t) {
      EXPECT_GE(once.slot_budgets[t], 0.0);
      future += once.slot_budgets[t];
    }
    EXPECT_LE(spent + future, std::max(50.0, spent) * (1.0 + 1e-12));
  }
}

TEST(WritePlanCsvTest, HeaderAndSeventeenDigits) {
  std::ostringstream out;
  WritePlanCsv(out, UniformPlan(1.0, 3));
  EXPECT_EQ(out.str(),
            "slot_index,budget\n"
            "0,0.33333333333333331\n"
            "1,0.33333333333333331\n"
            "2,0.33333333333333337\n");
}

}  // namespace
}  // namespace uduo
