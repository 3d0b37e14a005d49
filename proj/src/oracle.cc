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

#include <algorithm>
#include <string>

#include "uduo/dual_solver.h"
#include "uduo/error.h"
#include "uduo/kernels.h"

namespace uduo {

OracleResult BruteForceIp(const AllocationInstance& instance) {
  const int n = static_cast<int>(instance.users.size());
  const int count = instance.catalog.count;
  if (n > kMaxOracleUsers || count > kMaxOracleTreatments) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(n) + " users x " + std::to_string(count) +
                    " treatments exceeds the oracle caps");
  }
  int64_t assignments = 1;
  for (int i = 0; i < n; ++i) {
    assignments *= count;
    if (assignments > kMaxEnumeration) {
      throw Error(ErrorCode::kTooLarge,
                  std::to_string(count) + "^" + std::to_string(n) +
                      " assignments exceeds " +
                      std::to_string(kMaxEnumeration));
    }
  }
  const kernels::Enumeration e =
      kernels::EnumerateParallel(instance.users, instance.budget);
  OracleResult result;
  result.best_value = e.best_value;
  result.best_assignment = e.best_assignment;
  return result;
}

double DenseScanUpper(const AllocationInstance& instance, double step) {
  double upper = DefaultLambdaMax(instance.users, step);
  if (instance.budget > 0.0) {
    upper = std::min(upper, ArrivalValue(instance.users, 0.0) /
                                instance.budget);
  }
  return std::max(upper, step);
}

double DenseDualMin(const AllocationInstance& instance, double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidStep, "dense scan step must be positive");
  }
  return kernels::DenseMinParallel(instance.users, instance.budget, step,
                                   DenseScanUpper(instance, step));
}

OracleResult SolveOracle(const AllocationInstance& instance, double step) {
  OracleResult result = BruteForceIp(instance);
  result.dual_bound = DenseDualMin(instance, step);
  result.gap = result.dual_bound - result.best_value;
  return result;
}

}  // namespace uduo
