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

// Data-parallel kernels behind the dual solver and the oracle.
//
// Each kernel has an OpenMP version used by the library and a plain serial
// version kept as the reference for tests and benchmarks. The two must agree
// bit for bit: parallelism is only over independent cells or shards, and any
// reduction is either exact (min) or merged in a fixed order.

#ifndef UDUO_KERNELS_H_
#define UDUO_KERNELS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "uduo/core_model.h"

namespace uduo::kernels {

// Row-major T x grid.size() matrix of v_t(lambda_k).
std::vector<double> ArrivalMatrixSerial(const SlottedUsers& slotted,
                                        const LambdaGrid& grid);
std::vector<double> ArrivalMatrixParallel(const SlottedUsers& slotted,
                                          const LambdaGrid& grid);

struct Enumeration {
  double best_value = 0.0;
  std::vector<int> best_assignment;
  // Leaves visited; the pruned version visits fewer than count^n.
  int64_t visited = 0;
};

// Odometer over every assignment in lexicographic order, no pruning.
Enumeration EnumerateSerial(std::span<const UserResponse> users,
                            double budget);
// Depth-first search with budget pruning; prefixes of the first users are
// searched in parallel and merged in lexicographic prefix order.
Enumeration EnumerateParallel(std::span<const UserResponse> users,
                              double budget);

// min over lambda = k*step (k = 0..n-1) and lambda = upper of L(lambda).
double DenseMinSerial(std::span<const UserResponse> users, double budget,
                      double step, double upper);
double DenseMinParallel(std::span<const UserResponse> users, double budget,
                        double step, double upper);

}  // namespace uduo::kernels

#endif  // UDUO_KERNELS_H_
