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

#include "uduo/simulator.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "json.hpp"
#include "uduo/dual_solver.h"
#include "uduo/error.h"
#include "uduo/forecast_client.h"
#include "uduo/instance_io.h"

namespace uduo {

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kStationary: return "stationary";
    case Regime::kLinearDrift: return "linear_drift";
    case Regime::kAbruptShift: return "abrupt_shift";
    case Regime::kDiurnalPeaks: return "diurnal_peaks";
  }
  return "unknown";
}

Regime ParseRegime(std::string_view name) {
  for (Regime r : {Regime::kStationary, Regime::kLinearDrift,
                   Regime::kAbruptShift, Regime::kDiurnalPeaks}) {
    if (RegimeName(r) == name) return r;
  }
  throw Error(ErrorCode::kInvalidRegimeParams,
              "unknown regime '" + std::string(name) + "'");
}

std::string_view PolicyKindName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kOgdUniform: return "ogd_uniform";
    case PolicyKind::kObsUniform: return "obs_uniform";
    case PolicyKind::kUduo: return "uduo";
  }
  return "unknown";
}

PolicyKind ParsePolicyKind(std::string_view name) {
  for (PolicyKind k :
       {PolicyKind::kOgdUniform, PolicyKind::kObsUniform, PolicyKind::kUduo}) {
    if (PolicyKindName(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidPolicy,
              "unknown policy kind '" + std::string(name) + "'");
}

namespace {

void CheckWeights(const std::vector<double>& w, size_t archetypes,
                  const char* name) {
  if (w.empty()) return;
  if (w.size() != archetypes) {
    throw Error(ErrorCode::kInvalidRegimeParams,
                std::string(name) + " must have one weight per archetype");
  }
  double sum = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::kInvalidRegimeParams,
                  std::string(name) + " must be non-negative");
    }
    sum += x;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kInvalidRegimeParams,
                std::string(name) + " must not be all zero");
  }
}

std::vector<double> EffectiveWeights(const std::vector<double>& w, size_t n) {
  return w.empty() ? std::vector<double>(n, 1.0) : w;
}

// Sum of Gaussian bumps, for diurnal rates and mixture shifts.
double PeakIntensity(const StreamConfig& config, int slot) {
  double sum = 0.0;
  for (const Peak& p : config.peaks) {
    const double z = (slot - p.slot) / p.width;
    sum += p.amplitude * std::exp(-0.5 * z * z);
  }
  return sum;
}

}  // namespace

void ValidateStreamConfig(const StreamConfig& config) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidRegimeParams, msg);
  };
  if (config.slots_per_day < 1) fail("slots_per_day must be >= 1");
  if (config.archetypes.empty()) fail("at least one archetype is required");
  const size_t n = config.archetypes.front().rewards.size();
  if (n < 1) fail("archetypes need at least one treatment");
  for (const Archetype& a : config.archetypes) {
    if (a.rewards.size() != n || a.costs.size() != n) {
      fail("archetypes must share the treatment count");
    }
    for (size_t j = 0; j < n; ++j) {
      if (!std::isfinite(a.rewards[j]) || !std::isfinite(a.costs[j]) ||
          a.costs[j] < 0.0) {
        fail("archetype rewards must be finite and costs non-negative");
      }
    }
    if (!std::isfinite(a.noise) || a.noise < 0.0) {
      fail("noise must be non-negative");
    }
  }
  CheckWeights(config.weights_start, config.archetypes.size(), "weights_start");
  CheckWeights(config.weights_end, config.archetypes.size(), "weights_end");
  if (!std::isfinite(config.base_rate) || config.base_rate < 0.0) {
    fail("base_rate must be non-negative");
  }
  if (config.end_rate &&
      (!std::isfinite(*config.end_rate) || *config.end_rate < 0.0)) {
    fail("end_rate must be non-negative");
  }
  if (config.regime == Regime::kAbruptShift &&
      (config.shift_slot < 0 || config.shift_slot >= config.slots_per_day)) {
    fail("shift_slot must lie in [0, slots_per_day)");
  }
  if (config.regime == Regime::kDiurnalPeaks) {
    if (!std::isfinite(config.sin_amplitude)) fail("sin_amplitude not finite");
    for (const Peak& p : config.peaks) {
      if (!(p.width > 0.0) || !std::isfinite(p.amplitude) ||
          !std::isfinite(p.slot)) {
        fail("peaks need finite slot/amplitude and positive width");
      }
    }
  }
}

double SlotRate(const StreamConfig& config, int slot) {
  const double end = config.end_rate.value_or(config.base_rate);
  const int period = config.slots_per_day;
  switch (config.regime) {
    case Regime::kStationary:
      return config.base_rate;
    case Regime::kLinearDrift: {
      const double f = period > 1 ? static_cast<double>(slot) / (period - 1) : 0.0;
      return config.base_rate + f * (end - config.base_rate);
    }
    case Regime::kAbruptShift:
      return slot < config.shift_slot ? config.base_rate : end;
    case Regime::kDiurnalPeaks: {
      const double wave = config.sin_amplitude *
                          std::sin(2.0 * std::numbers::pi * slot / period);
      return config.base_rate *
             std::max(0.0, 1.0 + wave + PeakIntensity(config, slot));
    }
  }
  return config.base_rate;
}

std::vector<double> SlotWeights(const StreamConfig& config, int slot) {
  const size_t n = config.archetypes.size();
  const std::vector<double> start = EffectiveWeights(config.weights_start, n);
  const std::vector<double> end =
      config.weights_end.empty() ? start : config.weights_end;
  double f = 0.0;
  switch (config.regime) {
    case Regime::kStationary:
      f = 0.0;
      break;
    case Regime::kLinearDrift:
      f = config.slots_per_day > 1
              ? static_cast<double>(slot) / (config.slots_per_day - 1)
              : 0.0;
      break;
    case Regime::kAbruptShift:
      f = slot < config.shift_slot ? 0.0 : 1.0;
      break;
    case Regime::kDiurnalPeaks: {
      double peak_max = 0.0;
      for (const Peak& p : config.peaks) {
        peak_max = std::max(peak_max, std::abs(p.amplitude));
      }
      f = peak_max > 0.0
              ? std::clamp(PeakIntensity(config, slot) / peak_max, 0.0, 1.0)
              : 0.0;
      break;
    }
  }
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = (1.0 - f) * start[i] + f * end[i];
  return w;
}

SlottedUsers GenerateStream(const StreamConfig& config) {
  ValidateStreamConfig(config);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int period = config.slots_per_day;
  SlottedUsers stream(period);
  int64_t next_id = 0;
  for (int t = 0; t < period; ++t) {
    const double rate = SlotRate(config, t);
    const int64_t count =
        rate > 0.0 ? std::poisson_distribution<int64_t>(rate)(rng) : 0;
    const std::vector<double> weights = SlotWeights(config, t);
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    std::vector<UserResponse>& slot = stream[t];
    slot.reserve(count);
    for (int64_t u = 0; u < count; ++u) {
      const Archetype& a = config.archetypes[pick(rng)];
      UserResponse user;
      user.arrival_time = t + unit(rng);
      user.rewards.reserve(a.rewards.size() + 1);
      user.costs.reserve(a.costs.size() + 1);
      user.rewards.push_back(0.0);
      user.costs.push_back(0.0);
      for (size_t j = 0; j < a.rewards.size(); ++j) {
        const double zr = gauss(rng);
        const double zc = gauss(rng);
        user.rewards.push_back(a.rewards[j] * std::exp(a.noise * zr));
        user.costs.push_back(std::max(0.0, a.costs[j] * std::exp(a.noise * zc)));
      }
      slot.push_back(std::move(user));
    }
    std::stable_sort(slot.begin(), slot.end(),
                     [](const UserResponse& x, const UserResponse& y) {
                       return x.arrival_time < y.arrival_time;
                     });
    for (UserResponse& user : slot) user.user_id = next_id++;
  }
  return stream;
}

uint64_t DaySeed(uint64_t seed, int day) {
  if (day == 0) return seed;
  // splitmix64 finalizer
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(day);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void ValidatePolicy(const PolicySpec& policy) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidPolicy, msg);
  };
  if (!(policy.grid_epsilon > 0.0)) fail("grid_epsilon must be positive");
  if (policy.grid_k < 1) fail("grid_k must be >= 1");
  if (!(policy.tolerance > 0.0)) fail("tolerance must be positive");
  if (!(policy.ogd_step > 0.0)) fail("ogd_step must be positive");
  if (policy.backcast_length < 1) fail("backcast_length must be >= 1");
  if (policy.horizon < 1) fail("horizon must be >= 1");
  if (!(policy.floor_fraction >= 0.0 && policy.floor_fraction <= 1.0)) {
    fail("floor_fraction must lie in [0, 1]");
  }
  if (policy.kind == PolicyKind::kUduo &&
      policy.forecaster == ForecasterKind::kExternal &&
      policy.endpoint.empty()) {
    fail("external forecaster needs an endpoint");
  }
}

ConsumptionHistory ConsumptionAt(const std::vector<SlottedUsers>& history,
                                 double lambda) {
  ConsumptionHistory out;
  out.slots_per_day =
      history.empty() ? 1 : static_cast<int>(history.front().size());
  // Oldest day first; history[0] is the most recent.
  for (auto day = history.rbegin(); day != history.rend(); ++day) {
    for (const auto& slot : *day) {
      double spend = 0.0;
      for (const UserResponse& user : slot) {
        spend += ComputeBestResponse(user, lambda).cost;
      }
      out.slot_rates.push_back(spend);
    }
  }
  return out;
}

double GreedySpend(const SlottedUsers& stream) {
  double spend = 0.0;
  for (const auto& slot : stream) {
    for (const UserResponse& user : slot) {
      spend += ComputeBestResponse(user, 0.0).cost;
    }
  }
  return spend;
}

namespace {

std::vector<UserResponse> Pool(const SlottedUsers& stream) {
  std::vector<UserResponse> pooled;
  for (const auto& slot : stream) pooled.insert(pooled.end(), slot.begin(), slot.end());
  return pooled;
}

// Source of the arrival row used to price slot t.
class RowSource {
 public:
  virtual ~RowSource() = default;
  virtual std::vector<double> Predict(const SlidingWindow& window, int slot) = 0;
};

// Reads the realized rows of the evaluated day: the only source with access
// to the future.
class OracleRows : public RowSource {
 public:
  OracleRows(const SlottedUsers& stream, const LambdaGrid& grid)
      : series_(ArrivalSeries(stream, grid)) {}
  std::vector<double> Predict(const SlidingWindow&, int slot) override {
    return RepairRow(series_.row(slot));
  }

 private:
  ArrivalVectorSeries series_;
};

class BuiltinRows : public RowSource {
 public:
  BuiltinRows(ForecastMethod method, ForecastParams params, int horizon)
      : method_(method), params_(params), horizon_(horizon) {}
  std::vector<double> Predict(const SlidingWindow& window, int) override {
    return Forecast(window, horizon_, method_, params_).rows.front();
  }

 private:
  ForecastMethod method_;
  ForecastParams params_;
  int horizon_;
};

class ExternalRows : public RowSource {
 public:
  ExternalRows(const PolicySpec& policy, ForecastParams params,
               const LambdaGrid& grid)
      : transport_(policy.endpoint),
        grid_(grid),
        scene_id_(policy.scene_id),
        fallback_(policy.method),
        params_(params),
        horizon_(policy.horizon) {}
  std::vector<double> Predict(const SlidingWindow& window, int) override {
    return ForecastWithFallback(window, grid_, horizon_, scene_id_, transport_,
                                fallback_, params_)
        .rows.front();
  }

 private:
  HttpTransport transport_;
  LambdaGrid grid_;
  std::string scene_id_;
  ForecastMethod fallback_;
  ForecastParams params_;
  int horizon_;
};

// Tracks spend against the budget and applies the hard guard.
class Ledger {
 public:
  Ledger(double budget, bool slot_caps) : budget_(budget), slot_caps_(slot_caps) {}

  void OpenSlot(double slot_cap) {
    slot_cap_ = slot_cap;
    slot_spent_ = 0.0;
  }

  bool Affordable(double cost) const {
    if (spent_ + cost > budget_) return false;
    return !slot_caps_ || slot_spent_ + cost <= slot_cap_;
  }

  // Best response at lambda, re-selected over affordable treatments when the
  // unconstrained choice does not fit. The null treatment always fits.
  BestResponse Decide(const UserResponse& user, double lambda) const {
    BestResponse best = ComputeBestResponse(user, lambda);
    if (Affordable(best.cost)) return best;
    best = {0, user.rewards[0] - lambda * user.costs[0], user.costs[0],
            user.rewards[0]};
    for (int j = 1; j < user.num_treatments(); ++j) {
      if (!Affordable(user.costs[j])) continue;
      const double score = user.rewards[j] - lambda * user.costs[j];
      if (score > best.score ||
          (score == best.score && user.costs[j] < best.cost)) {
        best = {j, score, user.costs[j], user.rewards[j]};
      }
    }
    return best;
  }

  void Commit(double cost) {
    spent_ += cost;
    slot_spent_ += cost;
  }

  double spent() const { return spent_; }
  double remaining() const { return std::max(0.0, budget_ - spent_); }

 private:
  double budget_;
  bool slot_caps_;
  double spent_ = 0.0;
  double slot_cap_ = 0.0;
  double slot_spent_ = 0.0;
};

}  // namespace

EpisodeMetrics RunEpisode(const SlottedUsers& stream, double budget,
                          const PolicySpec& policy,
                          const std::vector<SlottedUsers>& history,
                          const EpisodeOptions& options) {
  ValidatePolicy(policy);
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw Error(ErrorCode::kNegativeBudget, "episode budget");
  }
  const int slots = static_cast<int>(stream.size());
  if (slots < 1) throw Error(ErrorCode::kInvalidPolicy, "empty stream");
  if (history.empty()) {
    throw Error(ErrorCode::kInvalidPolicy, "at least one history day needed");
  }
  for (const auto& day : history) {
    if (static_cast<int>(day.size()) != slots) {
      throw Error(ErrorCode::kShapeMismatch,
                  "history days must have the stream's slot count");
    }
  }

  EpisodeMetrics m;
  m.budget = budget;
  m.per_slot_lambda.assign(slots, 0.0);
  m.per_slot_spend.assign(slots, 0.0);
  m.per_slot_reward.assign(slots, 0.0);
  m.per_slot_users.assign(slots, 0);
  m.per_slot_decisions.assign(slots, 0);

  const std::vector<UserResponse> first_day = Pool(history.front());
  const double warm_lambda =
      SolveBisect(first_day, budget, policy.tolerance).lambda_star;

  BudgetPlan plan = policy.pacing == PacingKind::kTemporal
                        ? TemporalPlan(budget, ConsumptionAt(history, warm_lambda),
                                       policy.floor_fraction)
                        : UniformPlan(budget, slots);
  const BudgetPlan original_plan = plan;

  Ledger ledger(budget, !policy.rollover);

  auto record = [&](int t, const BestResponse& br) {
    ledger.Commit(br.cost);
    m.total_reward += br.reward;
    m.per_slot_reward[t] += br.reward;
    m.per_slot_spend[t] += br.cost;
    if (br.treatment_index != 0) {
      ++m.decisions_count;
      ++m.per_slot_decisions[t];
    }
    m.assignment.push_back(br.treatment_index);
  };

  auto slot_budget = [&](int t) {
    if (policy.rollover) {
      plan = ReplanRemaining(plan, ledger.spent(), t);
      return plan.slot_budgets[t];
    }
    return original_plan.slot_budgets[t];
  };

  switch (policy.kind) {
    case PolicyKind::kUduo: {
      const LambdaGrid grid =
          BuildGrid(warm_lambda, policy.grid_epsilon, policy.grid_k);
      ForecastParams params = policy.forecast_params;
      if (params.season_length <= 0) params.season_length = slots;
      std::unique_ptr<RowSource> source;
      switch (policy.forecaster) {
        case ForecasterKind::kOracle:
          source = std::make_unique<OracleRows>(stream, grid);
          break;
        case ForecasterKind::kBuiltin:
          source = std::make_unique<BuiltinRows>(policy.method, params,
                                                 policy.horizon);
          break;
        case ForecasterKind::kExternal:
          source = std::make_unique<ExternalRows>(policy, params, grid);
          break;
      }
      SlidingWindow window(policy.backcast_length, grid.size());
      for (auto day = history.rbegin(); day != history.rend(); ++day) {
        for (const auto& slot : *day) window.Push(ArrivalRow(slot, grid));
      }
      for (int t = 0; t < slots; ++t) {
        const double b_t = slot_budget(t);
        ledger.OpenSlot(b_t);
        const std::vector<double> row = source->Predict(window, t);
        const double lambda = SolveGrid(row, grid, b_t).lambda_star;
        m.per_slot_lambda[t] = lambda;
        for (const UserResponse& user : stream[t]) {
          record(t, ledger.Decide(user, lambda));
        }
        m.per_slot_users[t] = static_cast<int>(stream[t].size());
        window.Push(ArrivalRow(stream[t], grid));
      }
      break;
    }
    case PolicyKind::kObsUniform: {
      for (int t = 0; t < slots; ++t) {
        const double b_t = slot_budget(t);
        ledger.OpenSlot(b_t);
        const auto& neighbors = t == 0 ? history.front().back() : stream[t - 1];
        const double lambda =
            SolveBisect(neighbors, b_t, policy.tolerance).lambda_star;
        m.per_slot_lambda[t] = lambda;
        for (const UserResponse& user : stream[t]) {
          record(t, ledger.Decide(user, lambda));
        }
        m.per_slot_users[t] = static_cast<int>(stream[t].size());
      }
      break;
    }
    case PolicyKind::kOgdUniform: {
      double users_per_day = 0.0;
      for (const auto& day : history) {
        for (const auto& slot : day) users_per_day += slot.size();
      }
      users_per_day /= history.size();
      double lambda = warm_lambda;
      for (int t = 0; t < slots; ++t) {
        ledger.OpenSlot(slot_budget(t));
        double lambda_sum = 0.0;
        for (const UserResponse& user : stream[t]) {
          lambda_sum += lambda;
          const BestResponse br = ledger.Decide(user, lambda);
          record(t, br);
          const double expected_remaining =
              users_per_day * (slots - user.arrival_time) / slots;
          const double target =
              ledger.remaining() / std::max(1.0, expected_remaining);
          lambda = OgdStep(lambda, br.cost, target, policy.ogd_step);
        }
        m.per_slot_users[t] = static_cast<int>(stream[t].size());
        m.per_slot_lambda[t] =
            stream[t].empty() ? lambda : lambda_sum / stream[t].size();
      }
      break;
    }
  }

  m.total_spend = ledger.spent();
  m.violation = std::max(0.0, m.total_spend - budget);
  if (options.compute_dual_bound) {
    const std::vector<UserResponse> pooled = Pool(stream);
    m.dual_bound = SolveBisect(pooled, budget, 1e-9).objective;
  }
  return m;
}

void WriteEpisodeCsv(std::ostream& out, const EpisodeMetrics& metrics) {
  out << "slot,lambda,spend,reward,users,decisions\n";
  for (size_t t = 0; t < metrics.per_slot_lambda.size(); ++t) {
    out << t << ',' << FormatReal(metrics.per_slot_lambda[t]) << ','
        << FormatReal(metrics.per_slot_spend[t]) << ','
        << FormatReal(metrics.per_slot_reward[t]) << ','
        << metrics.per_slot_users[t] << ',' << metrics.per_slot_decisions[t]
        << '\n';
  }
}

SeededDay GenerateSeededDay(const StreamConfig& config, uint64_t seed,
                            int history_days) {
  if (history_days < 1) {
    throw Error(ErrorCode::kInvalidPolicy, "history_days must be >= 1");
  }
  SeededDay day;
  StreamConfig c = config;
  c.seed = DaySeed(seed, 0);
  day.stream = GenerateStream(c);
  for (int d = 1; d <= history_days; ++d) {
    c.seed = DaySeed(seed, d);
    day.history.push_back(GenerateStream(c));
  }
  return day;
}

namespace {

void MeanStd(const std::vector<double>& xs, double* mean, double* stddev) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  *mean = xs.empty() ? 0.0 : sum / xs.size();
  double sq = 0.0;
  for (double x : xs) sq += (x - *mean) * (x - *mean);
  *stddev = xs.size() > 1 ? std::sqrt(sq / (xs.size() - 1)) : 0.0;
}

}  // namespace

ComparisonReport ComparePolicies(const StreamConfig& config, double budget,
                                 const std::vector<PolicySpec>& policies,
                                 const std::vector<uint64_t>& seeds,
                                 const CompareOptions& options) {
  if (policies.size() < 2) {
    throw Error(ErrorCode::kInvalidPolicy, "compare needs at least 2 policies");
  }
  ValidateStreamConfig(config);
  for (const PolicySpec& p : policies) ValidatePolicy(p);

  const int n_seeds = static_cast<int>(seeds.size());
  const int n_policies = static_cast<int>(policies.size());
  std::vector<SeededDay> days(n_seeds);
  for (int s = 0; s < n_seeds; ++s) {
    days[s] = GenerateSeededDay(config, seeds[s], options.history_days);
  }

  ComparisonReport report;
  report.seeds = seeds;
  report.budget = budget;
  report.episodes.assign(n_policies, std::vector<EpisodeMetrics>(n_seeds));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n_policies) *
                                         n_seeds);
  const int jobs = n_policies * n_seeds;
#pragma omp parallel for schedule(dynamic, 1)
  for (int job = 0; job < jobs; ++job) {
    const int p = job / n_seeds;
    const int s = job % n_seeds;
    try {
      report.episodes[p][s] = RunEpisode(days[s].stream, budget, policies[p],
                                         days[s].history, options.episode);
    } catch (...) {
      errors[job] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int p = 0; p < n_policies; ++p) {
    PolicyAggregate agg;
    agg.name = policies[p].name.empty()
                   ? std::string(PolicyKindName(policies[p].kind))
                   : policies[p].name;
    std::vector<double> reward, spend, profit, decisions;
    for (const EpisodeMetrics& e : report.episodes[p]) {
      reward.push_back(e.total_reward);
      spend.push_back(e.total_spend);
      profit.push_back(e.profit());
      decisions.push_back(e.decisions_count);
      agg.max_violation = std::max(agg.max_violation, e.violation);
    }
    MeanStd(reward, &agg.mean_reward, &agg.std_reward);
    MeanStd(spend, &agg.mean_spend, &agg.std_spend);
    MeanStd(profit, &agg.mean_profit, &agg.std_profit);
    MeanStd(decisions, &agg.mean_decisions, &agg.std_decisions);
    report.policies.push_back(agg);
  }
  report.win_rate.assign(n_policies, std::vector<double>(n_policies, 0.0));
  for (int a = 0; a < n_policies; ++a) {
    for (int b = 0; b < n_policies; ++b) {
      double wins = 0.0;
      for (int s = 0; s < n_seeds; ++s) {
        const double ra = report.episodes[a][s].total_reward;
        const double rb = report.episodes[b][s].total_reward;
        wins += ra > rb ? 1.0 : (ra == rb ? 0.5 : 0.0);
      }
      report.win_rate[a][b] = n_seeds > 0 ? wins / n_seeds : 0.5;
    }
  }
  return report;
}

std::string ReportToJson(const ComparisonReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["budget"] = report.budget;
  doc["seeds"] = report.seeds;
  ordered_json policies = ordered_json::array();
  for (size_t p = 0; p < report.policies.size(); ++p) {
    const PolicyAggregate& a = report.policies[p];
    ordered_json row;
    row["name"] = a.name;
    row["mean_reward"] = a.mean_reward;
    row["std_reward"] = a.std_reward;
    row["mean_spend"] = a.mean_spend;
    row["std_spend"] = a.std_spend;
    row["mean_profit"] = a.mean_profit;
    row["std_profit"] = a.std_profit;
    row["mean_decisions"] = a.mean_decisions;
    row["std_decisions"] = a.std_decisions;
    row["max_violation"] = a.max_violation;
    std::vector<double> rewards;
    for (const EpisodeMetrics& e : report.episodes[p]) {
      rewards.push_back(e.total_reward);
    }
    row["rewards"] = rewards;
    policies.push_back(row);
  }
  doc["policies"] = policies;
  // Rows and columns follow the order of "policies".
  ordered_json wins = ordered_json::array();
  for (const auto& row : report.win_rate) wins.push_back(row);
  doc["win_rate"] = wins;
  return doc.dump(2) + "\n";
}

}  // namespace uduo
