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

// Day-long allocation episodes over synthetic, non-stationary user streams.
//
// A stream is a day of T slots. Per slot the user count is Poisson with a
// regime-dependent rate, and each user is drawn from a mixture of archetypes
// with log-normal noise on rewards and costs. Episodes replay a stream under
// one policy:
//   ogd_uniform  per-user projected dual descent from a historical warm start
//   obs_uniform  per-slot bisection on the previous slot's users
//   uduo         per-slot grid argmin over a forecast arrival row, with
//                paced and replanned slot budgets
// Every decision passes a hard guard, so spend never exceeds the budget.

#ifndef UDUO_SIMULATOR_H_
#define UDUO_SIMULATOR_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uduo/core_model.h"
#include "uduo/forecasting.h"
#include "uduo/pacing.h"

namespace uduo {

enum class Regime { kStationary, kLinearDrift, kAbruptShift, kDiurnalPeaks };

std::string_view RegimeName(Regime regime);
Regime ParseRegime(std::string_view name);

struct Archetype {
  // Without the null treatment; it is injected when users are drawn.
  std::vector<double> rewards;
  std::vector<double> costs;
  // Standard deviation of the log-normal multiplicative noise.
  double noise = 0.0;
};

struct Peak {
  double slot = 0.0;
  double amplitude = 0.0;
  double width = 1.0;
};

struct StreamConfig {
  uint64_t seed = 0;
  int slots_per_day = 24;
  std::vector<Archetype> archetypes;
  Regime regime = Regime::kStationary;
  // Mixture weights over archetypes; empty means uniform. Drift interpolates
  // start to end, abrupt shift switches at shift_slot, diurnal peaks move
  // toward the end weights with peak intensity.
  std::vector<double> weights_start;
  std::vector<double> weights_end;
  double base_rate = 10.0;
  // Rate at the end of a drift or after a shift; defaults to base_rate.
  std::optional<double> end_rate;
  int shift_slot = 0;
  // Diurnal: rate = base * max(0, 1 + a*sin(2 pi t / T) + sum of peaks).
  double sin_amplitude = 0.0;
  std::vector<Peak> peaks;
};

// Throws kInvalidRegimeParams.
void ValidateStreamConfig(const StreamConfig& config);

double SlotRate(const StreamConfig& config, int slot);
std::vector<double> SlotWeights(const StreamConfig& config, int slot);

// Deterministic in (config, seed). Users carry sequential ids and arrival
// times inside their slot, sorted, with the null treatment at index 0.
SlottedUsers GenerateStream(const StreamConfig& config);

// Seed for day `day` of the run seeded with `seed`; day 0 is the evaluated
// day, days 1..D its history.
uint64_t DaySeed(uint64_t seed, int day);

enum class PolicyKind { kOgdUniform, kObsUniform, kUduo };
enum class PacingKind { kUniform, kTemporal };
enum class ForecasterKind { kBuiltin, kExternal, kOracle };

std::string_view PolicyKindName(PolicyKind kind);
PolicyKind ParsePolicyKind(std::string_view name);

struct PolicySpec {
  std::string name;
  PolicyKind kind = PolicyKind::kUduo;
  ForecasterKind forecaster = ForecasterKind::kOracle;
  ForecastMethod method = ForecastMethod::kNaive;
  // season_length <= 0 means one day.
  ForecastParams forecast_params{.season_length = 0};
  // External forecaster; falls back to `method` when unreachable.
  std::string endpoint;
  std::string scene_id = "default";
  PacingKind pacing = PacingKind::kUniform;
  double floor_fraction = kDefaultFloorFraction;
  double grid_epsilon = kDefaultGridEpsilon;
  int grid_k = kDefaultGridK;
  double tolerance = 1e-6;
  double ogd_step = 0.01;
  int backcast_length = kDefaultBackcastLength;
  int horizon = 1;
  // Unspent slot budget rolls into later slots; otherwise each slot is capped
  // at its original plan value and leftovers are forfeited.
  bool rollover = true;
};

// Throws kInvalidPolicy.
void ValidatePolicy(const PolicySpec& policy);

struct EpisodeMetrics {
  double total_reward = 0.0;
  double total_spend = 0.0;
  double budget = 0.0;
  double violation = 0.0;
  std::vector<double> per_slot_lambda;
  std::vector<double> per_slot_spend;
  std::vector<double> per_slot_reward;
  std::vector<int> per_slot_users;
  std::vector<int> per_slot_decisions;
  std::optional<double> dual_bound;
  int decisions_count = 0;
  // Treatment chosen per user, in stream order.
  std::vector<int> assignment;

  double profit() const { return total_reward - total_spend; }
};

struct EpisodeOptions {
  // Attach min over lambda of L(lambda) on the pooled day as dual_bound.
  bool compute_dual_bound = false;
};

// Runs one day. `history` holds previous days of the same shape (at least
// one); the first provides the warm-start price, all of them feed temporal
// pacing, the forecasting window and OGD's arrival expectations.
EpisodeMetrics RunEpisode(const SlottedUsers& stream, double budget,
                          const PolicySpec& policy,
                          const std::vector<SlottedUsers>& history,
                          const EpisodeOptions& options = {});

// Per-slot spend of the history days priced at `lambda`, concatenated.
ConsumptionHistory ConsumptionAt(const std::vector<SlottedUsers>& history,
                                 double lambda);

// Sum of best-response costs at lambda = 0 (spend of unconstrained greedy).
double GreedySpend(const SlottedUsers& stream);

// CSV with columns slot,lambda,spend,reward,users,decisions.
void WriteEpisodeCsv(std::ostream& out, const EpisodeMetrics& metrics);

struct PolicyAggregate {
  std::string name;
  double mean_reward = 0.0;
  double std_reward = 0.0;
  double mean_spend = 0.0;
  double std_spend = 0.0;
  double mean_profit = 0.0;
  double std_profit = 0.0;
  double mean_decisions = 0.0;
  double std_decisions = 0.0;
  double max_violation = 0.0;
};

struct ComparisonReport {
  std::vector<uint64_t> seeds;
  double budget = 0.0;
  std::vector<PolicyAggregate> policies;
  // win_rate[a][b]: share of seeds where a's reward beats b's, ties counted
  // as half.
  std::vector<std::vector<double>> win_rate;
  // episodes[p][s] for policy p and seed s.
  std::vector<std::vector<EpisodeMetrics>> episodes;
};

struct CompareOptions {
  int history_days = 3;
  EpisodeOptions episode;
};

// Every policy runs on the same stream per seed; episodes run in parallel and
// the report is assembled in (policy, seed) order.
ComparisonReport ComparePolicies(const StreamConfig& config, double budget,
                                 const std::vector<PolicySpec>& policies,
                                 const std::vector<uint64_t>& seeds,
                                 const CompareOptions& options = {});

// Evaluated day and its history for one seed.
struct SeededDay {
  SlottedUsers stream;
  std::vector<SlottedUsers> history;
};
SeededDay GenerateSeededDay(const StreamConfig& config, uint64_t seed,
                            int history_days);

// JSON document with the budget, seeds, per-policy aggregates and win rates.
std::string ReportToJson(const ComparisonReport& report);

}  // namespace uduo

#endif  // UDUO_SIMULATOR_H_
