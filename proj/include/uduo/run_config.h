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

// JSON run configurations for the command-line tool. Unknown keys are
// rejected; every parsed config can be re-emitted with all defaults resolved.
// The schemas are documented in README.md.

#ifndef UDUO_RUN_CONFIG_H_
#define UDUO_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uduo/forecasting.h"
#include "uduo/simulator.h"

namespace uduo {

struct SimulateConfig {
  std::string output_dir = "uduo_out";
  StreamConfig stream;
  // Exactly one of the two is set; the fraction is of the greedy spend of the
  // day generated from stream.seed.
  std::optional<double> budget;
  std::optional<double> budget_greedy_fraction;
  int history_days = 3;
  std::vector<uint64_t> seeds;
  std::vector<PolicySpec> policies;
  bool compute_dual_bound = false;
};

struct GridSpec {
  double lambda_warm = 1.0;
  double epsilon = kDefaultGridEpsilon;
  int k_count = kDefaultGridK;
};

struct ForecastEvalConfig {
  std::string output_dir = "uduo_out";
  // Series source: a generated stream (days of realized arrival rows) or a
  // CSV of rows.
  std::optional<StreamConfig> stream;
  int days = 8;
  // Reuse the same day for every day, making the series exactly periodic.
  bool repeat_day = false;
  GridSpec grid;
  std::string series_csv;
  int backcast_length = kDefaultBackcastLength;
  std::vector<int> horizons = {12, 24, 48, 96};
  std::vector<ForecastMethod> methods = {
      ForecastMethod::kNaive, ForecastMethod::kSeasonalNaive,
      ForecastMethod::kExpSmoothing, ForecastMethod::kAutoRegressive};
  // Distance between rolling origins; <= 0 means one day.
  int stride = 0;
  ForecastParams params{.season_length = 0};
};

// Throws kParse on malformed JSON and kConfig on schema violations.
SimulateConfig ParseSimulateConfig(const std::string& text);
ForecastEvalConfig ParseForecastEvalConfig(const std::string& text);
StreamConfig ParseStreamConfigText(const std::string& text);

// Fully resolved JSON snapshots (2-space indented, trailing newline).
std::string ToJson(const SimulateConfig& config);
std::string ToJson(const ForecastEvalConfig& config);
std::string ToJson(const StreamConfig& config);

}  // namespace uduo

#endif  // UDUO_RUN_CONFIG_H_
