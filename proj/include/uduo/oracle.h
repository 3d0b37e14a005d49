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

// Ground truth for small instances: the exact integer optimum by enumeration
// and a dense-grid minimum of the dual objective.

#ifndef UDUO_ORACLE_H_
#define UDUO_ORACLE_H_

#include <cstdint>
#include <vector>

#include "uduo/core_model.h"

namespace uduo {

// Refuse enumerations larger than this many assignments.
inline constexpr int64_t kMaxEnumeration = 10'000'000;
inline constexpr int kMaxOracleUsers = 14;
inline constexpr int kMaxOracleTreatments = 5;  // including null

struct OracleResult {
  double best_value = 0.0;
  std::vector<int> best_assignment;
  double dual_bound = 0.0;
  double gap = 0.0;
};

// Exact optimum of the integer program over a validated instance. Ties go to
// the lexicographically smallest assignment. Throws kTooLarge past the caps.
// Fills best_value and best_assignment only.
OracleResult BruteForceIp(const AllocationInstance& instance);

// Upper end of the dense scan: min(DefaultLambdaMax, v(0)/B). Past v(0)/B the
// budget term alone exceeds L(0).
double DenseScanUpper(const AllocationInstance& instance, double step);

// Linear scan of L(lambda) with the given step. Throws kInvalidStep on a
// non-positive step.
double DenseDualMin(const AllocationInstance& instance, double step);

// Both of the above plus gap = dual_bound - best_value.
OracleResult SolveOracle(const AllocationInstance& instance, double step);

}  // namespace uduo

#endif  // UDUO_ORACLE_H_
