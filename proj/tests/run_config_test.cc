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

#include "uduo/run_config.h"

#include <cstdlib>

#include <gtest/gtest.h>

#include "test_support.h"

namespace uduo {
namespace {

using testing::CodeOf;

constexpr char kStream[] = R"({
  "seed": 3, "slots_per_day": 8, "regime": "stationary", "base_rate": 5,
  "archetypes": [{"rewards": [1, 2], "costs": [0.5, 1], "noise": 0.1}]
})";

std::string SimulateText(const std::string& extra = "") {
  return std::string(R"({"stream": )") + kStream +
         R"(, "budget": 10, "seeds": [1, 2],
    "policies": [{"kind": "ogd_uniform"},
                 {"name": "u", "kind": "uduo", "forecaster": "exp_smoothing",
                  "alpha": 0.5, "pacing": "temporal"}])" +
         extra + "}";
}

TEST(SimulateConfigTest, ParsesAndFillsDefaults) {
  unsetenv("UDUO_OUTPUT_DIR");
  const SimulateConfig c = ParseSimulateConfig(SimulateText());
  EXPECT_EQ(c.stream.slots_per_day, 8);
  EXPECT_EQ(*c.budget, 10.0);
  EXPECT_EQ(c.history_days, 3);
  ASSERT_EQ(c.policies.size(), 2u);
  EXPECT_EQ(c.policies[0].name, "ogd_uniform");
  EXPECT_EQ(c.policies[1].forecaster, ForecasterKind::kBuiltin);
  EXPECT_EQ(c.policies[1].method, ForecastMethod::kExpSmoothing);
  EXPECT_EQ(c.policies[1].forecast_params.alpha, 0.5);
  EXPECT_EQ(c.policies[1].pacing, PacingKind::kTemporal);
  EXPECT_EQ(c.output_dir, "uduo_out");
}

TEST(SimulateConfigTest, SnapshotReparsesToTheSameSnapshot) {
  const SimulateConfig c = ParseSimulateConfig(SimulateText());
  const std::string snap = ToJson(c);
  EXPECT_EQ(ToJson(ParseSimulateConfig(snap)), snap);
}

TEST(SimulateConfigTest, UnknownKeysRejected) {
  EXPECT_EQ(CodeOf([] { ParseSimulateConfig(SimulateText(R"(, "x": 1)")); }),
            ErrorCode::kConfig);
  const std::string bad_policy = R"({"stream": )" + std::string(kStream) +
                                 R"(, "budget": 1, "seeds": [1], "policies":
      [{"kind": "uduo", "speed": 2}, {"kind": "obs_uniform"}]})";
  EXPECT_EQ(CodeOf([&] { ParseSimulateConfig(bad_policy); }),
            ErrorCode::kConfig);
}

TEST(SimulateConfigTest, ValidationFailuresAreConfigErrors) {
  EXPECT_EQ(CodeOf([] {
              ParseSimulateConfig(SimulateText(R"(, "budget_greedy_fraction": 1)"));
            }),
            ErrorCode::kConfig);
  const std::string one_policy = R"({"stream": )" + std::string(kStream) +
                                 R"(, "budget": 1, "seeds": [1],
      "policies": [{"kind": "uduo"}]})";
  EXPECT_EQ(CodeOf([&] { ParseSimulateConfig(one_policy); }),
            ErrorCode::kConfig);
  const std::string bad_regime = R"({"stream": {"regime": "tidal",
      "archetypes": [{"rewards": [1], "costs": [1]}]}, "budget": 1,
      "seeds": [1], "policies": [{"kind": "uduo"}, {"kind": "uduo"}]})";
  EXPECT_EQ(CodeOf([&] { ParseSimulateConfig(bad_regime); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseSimulateConfig("{\"stream\": "); }),
            ErrorCode::kParse);
}

TEST(SimulateConfigTest, EnvironmentOverrides) {
  setenv("UDUO_OUTPUT_DIR", "/tmp/elsewhere", 1);
  setenv("UDUO_FORECAST_ENDPOINT", "127.0.0.1:9999", 1);
  const std::string text = R"({"stream": )" + std::string(kStream) +
                           R"(, "budget": 1, "seeds": [1], "policies":
      [{"kind": "uduo", "forecaster": "external", "endpoint": "a:1"},
       {"kind": "uduo", "forecaster": "naive", "endpoint": "b:2"}]})";
  const SimulateConfig c = ParseSimulateConfig(text);
  unsetenv("UDUO_OUTPUT_DIR");
  unsetenv("UDUO_FORECAST_ENDPOINT");
  EXPECT_EQ(c.output_dir, "/tmp/elsewhere");
  EXPECT_EQ(c.policies[0].endpoint, "127.0.0.1:9999");
  EXPECT_EQ(c.policies[1].endpoint, "b:2");
}

TEST(ForecastEvalConfigTest, ParsesBothSources) {
  const ForecastEvalConfig a = ParseForecastEvalConfig(
      std::string(R"({"stream": )") + kStream +
      R"(, "days": 4, "repeat_day": true, "horizons": [2, 4],
          "methods": ["naive", "seasonal_naive"]})");
  EXPECT_TRUE(a.stream.has_value());
  EXPECT_TRUE(a.repeat_day);
  EXPECT_EQ(a.horizons, (std::vector<int>{2, 4}));
  EXPECT_EQ(a.methods.size(), 2u);
  const ForecastEvalConfig b =
      ParseForecastEvalConfig(R"({"series_csv": "rows.csv"})");
  EXPECT_EQ(b.series_csv, "rows.csv");
  EXPECT_EQ(b.methods.size(), 4u);
  EXPECT_EQ(ToJson(ParseForecastEvalConfig(ToJson(a))), ToJson(a));
}

TEST(ForecastEvalConfigTest, Rejections) {
  EXPECT_EQ(CodeOf([] { ParseForecastEvalConfig("{}"); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] {
              ParseForecastEvalConfig(
                  R"({"series_csv": "x", "methods": ["prophet"]})");
            }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] {
              ParseForecastEvalConfig(R"({"series_csv": "x", "horizons": [0]})");
            }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] {
              ParseForecastEvalConfig(
                  R"({"series_csv": "x", "grid": {"epsilon": 0}})");
            }),
            ErrorCode::kConfig);
}

}  // namespace
}  // namespace uduo
