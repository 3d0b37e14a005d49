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

// Independent reference implementations for tests. Nothing here calls into
// the library's solvers; each oracle is the most literal reading of its
// definition, favouring clarity over speed.

#ifndef UDUO_TESTS_TEST_SUPPORT_H_
#define UDUO_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "uduo/core_model.h"
#include "uduo/error.h"

namespace uduo::testing {

// A user with the null treatment already at index 0.
inline UserResponse MakeUser(std::vector<double> rewards,
                             std::vector<double> costs, int64_t id = 0,
                             double arrival = 0.0) {
  UserResponse u;
  u.user_id = id;
  u.arrival_time = arrival;
  u.rewards = std::move(rewards);
  u.costs = std::move(costs);
  return u;
}

inline AllocationInstance MakeInstance(std::vector<UserResponse> users,
                                       double budget) {
  AllocationInstance inst;
  inst.catalog.count =
      users.empty() ? 1 : static_cast<int>(users.front().rewards.size());
  inst.catalog.includes_null = true;
  inst.users = std::move(users);
  inst.budget = budget;
  return inst;
}

// Uniform rewards and costs in [0,1] for treatments 1..m, budget uniform in
// [0, sum of all costs].
inline AllocationInstance RandomInstance(uint64_t seed, int users,
                                         int treatments) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UserResponse> list;
  double cost_sum = 0.0;
  for (int i = 0; i < users; ++i) {
    std::vector<double> r{0.0};
    std::vector<double> c{0.0};
    for (int j = 0; j < treatments; ++j) {
      r.push_back(unit(rng));
      c.push_back(unit(rng));
      cost_sum += c.back();
    }
    list.push_back(MakeUser(std::move(r), std::move(c), i, 0.0));
  }
  return MakeInstance(std::move(list), unit(rng) * cost_sum);
}

struct NaiveChoice {
  int index = 0;
  double score = 0.0;
  double cost = 0.0;
};

// argmax_j r_j - lambda c_j; ties to lower cost, then lower index.
inline NaiveChoice NaiveBestResponse(const UserResponse& u, double lambda) {
  NaiveChoice best{0, u.rewards[0] - lambda * u.costs[0], u.costs[0]};
  for (size_t j = 1; j < u.rewards.size(); ++j) {
    const double s = u.rewards[j] - lambda * u.costs[j];
    if (s > best.score || (s == best.score && u.costs[j] < best.cost)) {
      best = {static_cast<int>(j), s, u.costs[j]};
    }
  }
  return best;
}

inline double NaiveArrivalValue(const std::vector<UserResponse>& users,
                                double lambda) {
  double v = 0.0;
  for (const auto& u : users) v += NaiveBestResponse(u, lambda).score;
  return v;
}

inline double NaiveDual(const std::vector<UserResponse>& users, double budget,
                        double lambda) {
  return lambda * budget + NaiveArrivalValue(users, lambda);
}

struct NaiveIp {
  double value = 0.0;
  std::vector<int> assignment;
};

// Recursive enumeration of every assignment in lexicographic order; keeps
// the first strictly better feasible one, so ties go lexicographically low.
inline NaiveIp NaiveIntegerOptimum(const AllocationInstance& inst) {
  const int n = static_cast<int>(inst.users.size());
  NaiveIp best;
  best.assignment.assign(n, 0);
  bool found = false;
  std::vector<int> cur(n, 0);
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n) {
      double r = 0.0;
      double c = 0.0;
      for (int k = 0; k < n; ++k) {
        r += inst.users[k].rewards[cur[k]];
        c += inst.users[k].costs[cur[k]];
      }
      if (c <= inst.budget && (!found || r > best.value)) {
        best.value = r;
        best.assignment = cur;
        found = true;
      }
      return;
    }
    for (size_t j = 0; j < inst.users[i].rewards.size(); ++j) {
      cur[i] = static_cast<int>(j);
      self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return best;
}

// Power |X_k|^2 of the mean-removed series for bins 1..N/2, by direct sum.
inline std::vector<double> NaivePowerSpectrum(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  std::vector<double> power(n / 2 + 1, 0.0);
  for (int k = 1; k <= n / 2; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (int t = 0; t < n; ++t) {
      const double a = 2.0 * std::numbers::pi * k * t / n;
      re += (x[t] - mean) * std::cos(a);
      im -= (x[t] - mean) * std::sin(a);
    }
    power[k] = re * re + im * im;
  }
  return power;
}

// Period of the strongest bin; ties to the lower bin (longer period).
inline int NaiveDominantPeriod(const std::vector<double>& x) {
  const auto p = NaivePowerSpectrum(x);
  int best = 1;
  for (int k = 2; k < static_cast<int>(p.size()); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return static_cast<int>(std::lround(static_cast<double>(x.size()) / best));
}

// Non-increasing and convex within tol * scale, non-negative.
inline bool NaiveArrivalShape(const std::vector<double>& row,
                              double tol = 1e-9) {
  double scale = 1.0;
  for (double v : row) scale = std::max(scale, std::abs(v));
  const double eps = tol * scale;
  for (size_t k = 0; k < row.size(); ++k) {
    if (row[k] < -eps) return false;
    if (k + 1 < row.size() && row[k + 1] > row[k] + eps) return false;
    if (k >= 1 && k + 1 < row.size() &&
        row[k + 1] - 2.0 * row[k] + row[k - 1] < -eps) {
      return false;
    }
  }
  return true;
}

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIo;
}

}  // namespace uduo::testing

#endif  // UDUO_TESTS_TEST_SUPPORT_H_
