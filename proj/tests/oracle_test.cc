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

#include "uduo/oracle.h"

#include <random>

#include <gtest/gtest.h>

#include "test_support.h"
#include "uduo/dual_solver.h"
#include "uduo/kernels.h"

namespace uduo {
namespace {

using testing::CodeOf;
using testing::MakeInstance;
using testing::MakeUser;
using testing::RandomInstance;

TEST(BruteForceIpTest, UnaffordableTreatment) {
  const auto r = BruteForceIp(MakeInstance({MakeUser({0, 5}, {0, 3})}, 2.0));
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_EQ(r.best_assignment, (std::vector<int>{0}));
}

TEST(BruteForceIpTest, TwoUsersOneFits) {
  const auto r = BruteForceIp(MakeInstance(
      {MakeUser({0, 4}, {0, 2}), MakeUser({0, 3}, {0, 2})}, 2.0));
  EXPECT_EQ(r.best_value, 4.0);
  EXPECT_EQ(r.best_assignment, (std::vector<int>{1, 0}));
}

TEST(BruteForceIpTest, TiesGoLexicographicallyLow) {
  // Both single-user assignments reach 3; [0,1] precedes [1,0].
  const auto r = BruteForceIp(MakeInstance(
      {MakeUser({0, 3}, {0, 1}), MakeUser({0, 3}, {0, 1})}, 1.0));
  EXPECT_EQ(r.best_value, 3.0);
  EXPECT_EQ(r.best_assignment, (std::vector<int>{0, 1}));
}

TEST(BruteForceIpTest, MatchesRecursiveEnumeration) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const int m = 1 + static_cast<int>(seed % 3);
    const auto inst = RandomInstance(seed, n, m);
    const auto got = BruteForceIp(inst);
    const auto want = testing::NaiveIntegerOptimum(inst);
    ASSERT_EQ(got.best_value, want.value) << "seed " << seed;
    ASSERT_EQ(got.best_assignment, want.assignment) << "seed " << seed;
    double spend = 0.0;
    for (int i = 0; i < n; ++i) spend += inst.users[i].costs[got.best_assignment[i]];
    EXPECT_LE(spend, inst.budget);
  }
}

TEST(BruteForceIpTest, RefusesOversizedInstances) {
  EXPECT_EQ(CodeOf([] { BruteForceIp(RandomInstance(1, 15, 1)); }),
            ErrorCode::kTooLarge);
  EXPECT_EQ(CodeOf([] { BruteForceIp(RandomInstance(1, 3, 5)); }),
            ErrorCode::kTooLarge);
  // 5^11 > 1e7.
  EXPECT_EQ(CodeOf([] { BruteForceIp(RandomInstance(1, 11, 4)); }),
            ErrorCode::kTooLarge);
  EXPECT_NO_THROW(BruteForceIp(RandomInstance(1, 10, 4)));
}

TEST(DenseDualMinTest, EmptyInstance) {
  EXPECT_EQ(DenseDualMin(MakeInstance({}, 3.0), 1e-3), 0.0);
}

TEST(DenseDualMinTest, BreakpointInstance) {
  const auto inst = MakeInstance({MakeUser({0, 2}, {0, 1})}, 0.0);
  const double step = 1e-4;
  EXPECT_NEAR(DenseDualMin(inst, step), DualObjective(2.0, 0.0, inst.users),
              step * 1.0);
}

TEST(DenseDualMinTest, RejectsNonPositiveStep) {
  EXPECT_EQ(CodeOf([] { DenseDualMin(RandomInstance(1, 3, 1), 0.0); }),
            ErrorCode::kInvalidStep);
}

TEST(DenseDualMinTest, WeakDualityAndSampledUpperBound) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = RandomInstance(seed, 7, 2);
    const double opt = testing::NaiveIntegerOptimum(inst).value;
    const double dual = DenseDualMin(inst, 1e-4);
    const double scale = std::max(1.0, std::abs(opt));
    EXPECT_LE(opt, dual + 1e-9 * scale);
    for (double x = 0.0; x <= 3.0; x += 0.01) {
      EXPECT_LE(dual, testing::NaiveDual(inst.users, inst.budget, x) + 1e-12);
    }
  }
}

TEST(DenseDualMinTest, RefiningTheStepNeverIncreases) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = RandomInstance(seed, 6, 3);
    // Halving keeps every coarse point on the fine lattice.
    double prev = DenseDualMin(inst, 0.01);
    for (double step : {0.005, 0.0025, 0.00125}) {
      const double cur = DenseDualMin(inst, step);
      EXPECT_LE(cur, prev + 1e-12);
      prev = cur;
    }
  }
}

TEST(SolveOracleTest, GapIsNonNegative) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = SolveOracle(RandomInstance(seed, 6, 3), 1e-3);
    EXPECT_GE(r.gap, -1e-9 * std::max(1.0, r.best_value));
    EXPECT_DOUBLE_EQ(r.gap, r.dual_bound - r.best_value);
  }
}

TEST(KernelsTest, EnumerationSerialAndParallelAgreeBitwise) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = RandomInstance(seed, 2 + seed % 9, 1 + seed % 3);
    const auto a = kernels::EnumerateSerial(inst.users, inst.budget);
    const auto b = kernels::EnumerateParallel(inst.users, inst.budget);
    ASSERT_EQ(a.best_value, b.best_value);
    ASSERT_EQ(a.best_assignment, b.best_assignment);
    EXPECT_LE(b.visited, a.visited);
  }
}

TEST(KernelsTest, DenseMinSerialAndParallelAgreeBitwise) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = RandomInstance(seed, 10, 3);
    const double upper = DenseScanUpper(inst, 1e-4);
    EXPECT_EQ(kernels::DenseMinSerial(inst.users, inst.budget, 1e-4, upper),
              kernels::DenseMinParallel(inst.users, inst.budget, 1e-4, upper));
  }
}

}  // namespace
}  // namespace uduo
