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

// uduo: command-line front end.
//
//   uduo solve INSTANCE [--tolerance T] [--lambda-max X] [--output FILE]
//   uduo simulate CONFIG
//   uduo forecast-eval CONFIG
//   uduo pace --history FILE --budget B --slots-per-day T
//             [--strategy uniform|temporal] [--floor-fraction F]
//             [--output-dir DIR]
//   uduo generate CONFIG --budget B --output FILE [--seed S]
//
// Exit codes: 0 ok, 2 I/O, 3 parse, 4 validation or config, 1 other.
// Outputs carry no timestamps; each run records one in run_info.json.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "uduo/core_model.h"
#include "uduo/dual_solver.h"
#include "uduo/error.h"
#include "uduo/forecasting.h"
#include "uduo/instance_io.h"
#include "uduo/pacing.h"
#include "uduo/run_config.h"
#include "uduo/simulator.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace uduo {
namespace {

constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitInvalid = 4;

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

fs::path PrepareDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir + "'");
  return fs::path(dir);
}

void WriteRunInfo(const fs::path& dir, const std::string& command) {
  const auto now = std::chrono::time_point_cast<std::chrono::seconds>(
      std::chrono::system_clock::now());
  Json j;
  j["command"] = command;
  j["started_at"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
  WriteText(dir / "run_info.json", j.dump(2) + "\n");
}

// One value per non-empty line; a non-numeric first line is a header.
std::vector<double> ReadColumn(const std::string& path) {
  std::istringstream in(ReadText(path));
  std::vector<double> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      size_t used = 0;
      const double v = std::stod(line, &used);
      if (line.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("trailing text");
      }
      out.push_back(v);
    } catch (const std::exception&) {
      if (line_no == 1) continue;
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": not a number");
    }
  }
  return out;
}

// Comma-separated rows of equal width; a non-numeric first line is a header.
Matrix ReadRows(const std::string& path) {
  std::istringstream in(ReadText(path));
  Matrix rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    bool ok = true;
    while (std::getline(cells, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) {
          ok = false;
        }
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      if (line_no == 1) continue;
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": malformed row");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  double tolerance = 1e-6;
  std::optional<double> lambda_max;
  std::string output = "solution.json";
};

int RunSolve(const SolveArgs& args) {
  const AllocationInstance inst =
      ValidateInstance(ReadInstanceFile(args.instance).instance);
  const DualSolution sol =
      SolveBisect(inst.users, inst.budget, args.tolerance, args.lambda_max);
  fmt::print("lambda_star {}\nobjective {}\niterations {}\nsubgradient {}\n",
             FormatReal(sol.lambda_star), FormatReal(sol.objective),
             sol.iterations, FormatReal(sol.subgradient_at_solution));
  const std::string body =
      "{\"lambda_star\":" + FormatReal(sol.lambda_star) +
      ",\"objective\":" + FormatReal(sol.objective) +
      ",\"iterations\":" + std::to_string(sol.iterations) +
      ",\"subgradient\":" + FormatReal(sol.subgradient_at_solution) +
      ",\"users\":" + std::to_string(inst.users.size()) +
      ",\"budget\":" + FormatReal(inst.budget) + "}\n";
  const fs::path out(args.output);
  if (out.has_parent_path()) PrepareDir(out.parent_path().string());
  WriteText(out, body);
  return 0;
}

// ---- simulate -------------------------------------------------------------

double ResolveBudget(SimulateConfig* config) {
  if (config->budget) return *config->budget;
  StreamConfig c = config->stream;
  c.seed = DaySeed(config->stream.seed, 0);
  const double budget =
      *config->budget_greedy_fraction * GreedySpend(GenerateStream(c));
  return budget;
}

void PrintSummary(const ComparisonReport& report) {
  fmt::print("budget {}  seeds {}\n", FormatReal(report.budget),
             report.seeds.size());
  fmt::print("{:<20} {:>14} {:>12} {:>14} {:>12} {:>12} {:>10}\n", "policy",
             "reward", "reward_sd", "spend", "profit", "decisions",
             "violation");
  for (const auto& a : report.policies) {
    fmt::print("{:<20} {:>14.4f} {:>12.4f} {:>14.4f} {:>12.4f} {:>12.1f} "
               "{:>10.3g}\n",
               a.name, a.mean_reward, a.std_reward, a.mean_spend,
               a.mean_profit, a.mean_decisions, a.max_violation);
  }
}

int RunSimulate(const std::string& config_path) {
  SimulateConfig config = ParseSimulateConfig(ReadText(config_path));
  const double budget = ResolveBudget(&config);
  const fs::path dir = PrepareDir(config.output_dir);
  SimulateConfig resolved = config;
  resolved.budget = budget;
  resolved.budget_greedy_fraction.reset();
  WriteText(dir / "config.resolved.json", ToJson(resolved));
  WriteRunInfo(dir, "simulate");

  CompareOptions options;
  options.history_days = config.history_days;
  options.episode.compute_dual_bound = config.compute_dual_bound;
  const ComparisonReport report = ComparePolicies(
      config.stream, budget, config.policies, config.seeds, options);
  for (size_t p = 0; p < config.policies.size(); ++p) {
    for (size_t s = 0; s < config.seeds.size(); ++s) {
      std::ostringstream csv;
      WriteEpisodeCsv(csv, report.episodes[p][s]);
      WriteText(dir / fmt::format("episode_{}_{}_seed{}.csv", p,
                                  config.policies[p].name, config.seeds[s]),
                csv.str());
    }
  }
  WriteText(dir / "report.json", ReportToJson(report));
  PrintSummary(report);
  return 0;
}

// ---- forecast-eval --------------------------------------------------------

struct EvalRow {
  std::string method;
  int horizon;
  double mse;
  double mae;
  int origins;
};

int RunForecastEval(const std::string& config_path) {
  ForecastEvalConfig config = ParseForecastEvalConfig(ReadText(config_path));
  const fs::path dir = PrepareDir(config.output_dir);
  WriteText(dir / "config.resolved.json", ToJson(config));
  WriteRunInfo(dir, "forecast-eval");

  Matrix series;
  int period = 24;
  if (config.stream) {
    const StreamConfig& sc = *config.stream;
    period = sc.slots_per_day;
    const LambdaGrid grid = BuildGrid(config.grid.lambda_warm,
                                      config.grid.epsilon, config.grid.k_count);
    // Chronological: oldest day first, the evaluated day last.
    for (int d = config.days - 1; d >= 0; --d) {
      StreamConfig c = sc;
      c.seed = config.repeat_day ? sc.seed : DaySeed(sc.seed, d);
      const ArrivalVectorSeries rows = ArrivalSeries(GenerateStream(c), grid);
      for (int t = 0; t < rows.slot_count(); ++t) {
        series.push_back(rows.row_copy(t));
      }
    }
  } else {
    series = ReadRows(config.series_csv);
  }
  if (series.empty()) throw Error(ErrorCode::kConfig, "empty series");
  ForecastParams params = config.params;
  if (params.season_length <= 0) params.season_length = period;
  const int stride = config.stride > 0 ? config.stride : period;
  const int n = static_cast<int>(series.size());
  const int width = static_cast<int>(series.front().size());
  const int length = config.backcast_length;

  std::vector<EvalRow> table;
  for (ForecastMethod method : config.methods) {
    for (int horizon : config.horizons) {
      double mse = 0.0;
      double mae = 0.0;
      int origins = 0;
      for (int o = length; o + horizon <= n; o += stride) {
        SlidingWindow window(length, width);
        for (int i = o - length; i < o; ++i) window.Push(series[i]);
        const ForecastResult f = Forecast(window, horizon, method, params);
        const Matrix truth(series.begin() + o, series.begin() + o + horizon);
        mse += Mse(truth, f.rows);
        mae += Mae(truth, f.rows);
        ++origins;
      }
      if (origins == 0) {
        throw Error(ErrorCode::kConfig,
                    fmt::format("series of {} rows too short for backcast {} "
                                "and horizon {}",
                                n, length, horizon));
      }
      table.push_back({std::string(MethodName(method)), horizon,
                       mse / origins, mae / origins, origins});
    }
  }
  std::string csv = "method,horizon,mse,mae,origins\n";
  fmt::print("{:<16} {:>8} {:>14} {:>14} {:>8}\n", "method", "horizon", "mse",
             "mae", "origins");
  for (const EvalRow& r : table) {
    csv += fmt::format("{},{},{},{},{}\n", r.method, r.horizon,
                       FormatReal(r.mse), FormatReal(r.mae), r.origins);
    fmt::print("{:<16} {:>8} {:>14.6g} {:>14.6g} {:>8}\n", r.method,
               r.horizon, r.mse, r.mae, r.origins);
  }
  WriteText(dir / "metrics.csv", csv);
  return 0;
}

// ---- pace -----------------------------------------------------------------

struct PaceArgs {
  std::string history;
  double budget = 0.0;
  int slots_per_day = 24;
  std::string strategy = "temporal";
  double floor_fraction = kDefaultFloorFraction;
  std::string output_dir = "uduo_out";
};

int RunPace(PaceArgs args) {
  if (const char* env = std::getenv("UDUO_OUTPUT_DIR");
      env != nullptr && *env != '\0') {
    args.output_dir = env;
  }
  ConsumptionHistory history;
  history.slot_rates = ReadColumn(args.history);
  history.slots_per_day = args.slots_per_day;
  ValidateHistory(history);
  if (!(args.budget >= 0.0)) {
    throw Error(ErrorCode::kNegativeBudget, "budget must be >= 0");
  }
  BudgetPlan plan;
  if (args.strategy == "uniform") {
    plan = UniformPlan(args.budget, args.slots_per_day);
  } else if (args.strategy == "temporal") {
    plan = TemporalPlan(args.budget, history, args.floor_fraction);
  } else {
    throw Error(ErrorCode::kConfig, "unknown strategy '" + args.strategy + "'");
  }
  const SpectrumReport spectrum = Periodogram(history);

  const fs::path dir = PrepareDir(args.output_dir);
  Json resolved;
  resolved["history"] = args.history;
  resolved["budget"] = args.budget;
  resolved["slots_per_day"] = args.slots_per_day;
  resolved["strategy"] = args.strategy;
  resolved["floor_fraction"] = args.floor_fraction;
  resolved["output_dir"] = args.output_dir;
  WriteText(dir / "config.resolved.json", resolved.dump(2) + "\n");
  WriteRunInfo(dir, "pace");

  std::ostringstream csv;
  WritePlanCsv(csv, plan);
  WriteText(dir / "plan.csv", csv.str());
  WriteText(dir / "spectrum.json",
            "{\n  \"dominant_period\": " +
                std::to_string(spectrum.dominant_period) +
                ",\n  \"power_fraction\": " +
                FormatReal(spectrum.power_fraction) +
                ",\n  \"degenerate_profile\": " +
                (plan.degenerate_profile ? "true" : "false") + "\n}\n");
  fmt::print("dominant_period {}\npower_fraction {}\nplan_sum {}\n",
             spectrum.dominant_period, FormatReal(spectrum.power_fraction),
             FormatReal(plan.Sum()));
  return 0;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string config;
  double budget = 0.0;
  std::string output;
  std::optional<uint64_t> seed;
};

int RunGenerate(const GenerateArgs& args) {
  StreamConfig config = ParseStreamConfigText(ReadText(args.config));
  if (args.seed) config.seed = *args.seed;
  const SlottedUsers stream = GenerateStream(config);
  const AllocationInstance inst = FlattenStream(stream, args.budget);
  const fs::path out(args.output);
  if (out.has_parent_path()) PrepareDir(out.parent_path().string());
  WriteInstanceFile(args.output, inst, config.slots_per_day);
  fmt::print("users {}\nslots {}\n", inst.users.size(), config.slots_per_day);
  return 0;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kParse: return kExitParse;
    default: return kExitInvalid;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"UDuo budget-constrained allocation engine"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the dual of an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance JSONL file")
      ->required();
  solve_cmd->add_option("--tolerance", solve.tolerance, "Bisection tolerance");
  solve_cmd->add_option("--lambda-max", solve.lambda_max,
                        "Upper end of the bisection bracket");
  solve_cmd->add_option("--output", solve.output, "Solution JSON path");

  std::string simulate_config;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Run and compare policies on streams");
  sim_cmd->add_option("config", simulate_config, "Simulation config JSON")
      ->required();

  std::string eval_config;
  auto* eval_cmd = app.add_subcommand("forecast-eval",
                                      "Rolling-origin forecaster evaluation");
  eval_cmd->add_option("config", eval_config, "Evaluation config JSON")
      ->required();

  PaceArgs pace;
  auto* pace_cmd = app.add_subcommand("pace", "Plan slot budgets from history");
  pace_cmd->add_option("--history", pace.history, "Per-slot consumption file")
      ->required();
  pace_cmd->add_option("--budget", pace.budget, "Total budget")->required();
  pace_cmd->add_option("--slots-per-day", pace.slots_per_day, "Slots per day");
  pace_cmd->add_option("--strategy", pace.strategy, "uniform or temporal");
  pace_cmd->add_option("--floor-fraction", pace.floor_fraction,
                       "Uniform share mixed into temporal plans");
  pace_cmd->add_option("--output-dir", pace.output_dir, "Output directory");

  GenerateArgs gen;
  auto* gen_cmd =
      app.add_subcommand("generate", "Write a generated stream as an instance");
  gen_cmd->add_option("config", gen.config, "Stream config JSON")->required();
  gen_cmd->add_option("--budget", gen.budget, "Instance budget")->required();
  gen_cmd->add_option("--output", gen.output, "Instance JSONL path")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Override the stream seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*sim_cmd) return RunSimulate(simulate_config);
    if (*eval_cmd) return RunForecastEval(eval_config);
    if (*pace_cmd) return RunPace(pace);
    if (*gen_cmd) return RunGenerate(gen);
  } catch (const Error& e) {
    std::cerr << "uduo: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "uduo: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace uduo

int main(int argc, char** argv) { return uduo::Main(argc, argv); }
