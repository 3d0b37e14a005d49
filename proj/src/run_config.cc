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
#include <initializer_list>
#include <set>

#include "json.hpp"
#include "uduo/error.h"

namespace uduo {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void Fail(const std::string& msg) {
  throw Error(ErrorCode::kConfig, msg);
}

Json ParseText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

void RequireObject(const Json& j, const std::string& where) {
  if (!j.is_object()) Fail(where + " must be an object");
}

void CheckKeys(const Json& j, const std::string& where,
               std::initializer_list<const char*> allowed) {
  RequireObject(j, where);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key())) {
      Fail("unknown key '" + item.key() + "' in " + where);
    }
  }
}

// Reads j[key] into *out when present, converting type errors to kConfig.
template <typename T>
void Read(const Json& j, const char* key, const std::string& where, T* out) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const Json::exception&) {
    Fail(where + "." + key + " has the wrong type");
  }
}

double ReadNumber(const Json& j, const char* key, const std::string& where) {
  double v = 0.0;
  if (!j.contains(key)) Fail(where + "." + key + " is required");
  Read(j, key, where, &v);
  return v;
}

// Library validation errors surface as config errors with their context.
template <typename Fn>
auto Guarded(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    Fail(where + ": " + e.what());
  }
}

StreamConfig ParseStream(const Json& j) {
  const std::string where = "stream";
  CheckKeys(j, where,
            {"seed", "slots_per_day", "archetypes", "regime", "weights_start",
             "weights_end", "base_rate", "end_rate", "shift_slot",
             "sin_amplitude", "peaks"});
  StreamConfig c;
  Read(j, "seed", where, &c.seed);
  Read(j, "slots_per_day", where, &c.slots_per_day);
  if (j.contains("regime")) {
    std::string name;
    Read(j, "regime", where, &name);
    c.regime = Guarded(where, [&] { return ParseRegime(name); });
  }
  Read(j, "weights_start", where, &c.weights_start);
  Read(j, "weights_end", where, &c.weights_end);
  Read(j, "base_rate", where, &c.base_rate);
  if (j.contains("end_rate")) c.end_rate = ReadNumber(j, "end_rate", where);
  Read(j, "shift_slot", where, &c.shift_slot);
  Read(j, "sin_amplitude", where, &c.sin_amplitude);
  if (!j.contains("archetypes") || !j.at("archetypes").is_array()) {
    Fail("stream.archetypes must be an array");
  }
  for (const Json& a : j.at("archetypes")) {
    const std::string aw = "stream.archetypes[]";
    CheckKeys(a, aw, {"rewards", "costs", "noise"});
    Archetype arch;
    Read(a, "rewards", aw, &arch.rewards);
    Read(a, "costs", aw, &arch.costs);
    Read(a, "noise", aw, &arch.noise);
    c.archetypes.push_back(std::move(arch));
  }
  if (j.contains("peaks")) {
    if (!j.at("peaks").is_array()) Fail("stream.peaks must be an array");
    for (const Json& p : j.at("peaks")) {
      const std::string pw = "stream.peaks[]";
      CheckKeys(p, pw, {"slot", "amplitude", "width"});
      Peak peak;
      Read(p, "slot", pw, &peak.slot);
      Read(p, "amplitude", pw, &peak.amplitude);
      Read(p, "width", pw, &peak.width);
      c.peaks.push_back(peak);
    }
  }
  Guarded(where, [&] {
    ValidateStreamConfig(c);
    return 0;
  });
  return c;
}

ForecasterKind ParseForecaster(const std::string& name, PolicySpec* spec) {
  if (name == "oracle") return ForecasterKind::kOracle;
  if (name == "external") return ForecasterKind::kExternal;
  spec->method = Guarded("policy.forecaster", [&] { return ParseMethod(name); });
  return ForecasterKind::kBuiltin;
}

PolicySpec ParsePolicy(const Json& j) {
  const std::string where = "policies[]";
  CheckKeys(j, where,
            {"name", "kind", "forecaster", "fallback", "endpoint", "scene_id",
             "pacing", "floor_fraction", "grid_epsilon", "grid_k", "tolerance",
             "ogd_step", "backcast_length", "horizon", "rollover",
             "season_length", "alpha", "ar_order", "ridge"});
  PolicySpec p;
  std::string kind = std::string(PolicyKindName(p.kind));
  Read(j, "kind", where, &kind);
  p.kind = Guarded(where, [&] { return ParsePolicyKind(kind); });
  p.name = kind;
  Read(j, "name", where, &p.name);
  if (j.contains("forecaster")) {
    std::string f;
    Read(j, "forecaster", where, &f);
    p.forecaster = ParseForecaster(f, &p);
  }
  if (j.contains("fallback")) {
    std::string f;
    Read(j, "fallback", where, &f);
    p.method = Guarded(where, [&] { return ParseMethod(f); });
  }
  Read(j, "endpoint", where, &p.endpoint);
  Read(j, "scene_id", where, &p.scene_id);
  if (j.contains("pacing")) {
    std::string pacing;
    Read(j, "pacing", where, &pacing);
    if (pacing == "uniform") {
      p.pacing = PacingKind::kUniform;
    } else if (pacing == "temporal") {
      p.pacing = PacingKind::kTemporal;
    } else {
      Fail("unknown pacing '" + pacing + "'");
    }
  }
  Read(j, "floor_fraction", where, &p.floor_fraction);
  Read(j, "grid_epsilon", where, &p.grid_epsilon);
  Read(j, "grid_k", where, &p.grid_k);
  Read(j, "tolerance", where, &p.tolerance);
  Read(j, "ogd_step", where, &p.ogd_step);
  Read(j, "backcast_length", where, &p.backcast_length);
  Read(j, "horizon", where, &p.horizon);
  Read(j, "rollover", where, &p.rollover);
  Read(j, "season_length", where, &p.forecast_params.season_length);
  Read(j, "alpha", where, &p.forecast_params.alpha);
  Read(j, "ar_order", where, &p.forecast_params.ar_order);
  Read(j, "ridge", where, &p.forecast_params.ridge);
  if (const char* env = std::getenv("UDUO_FORECAST_ENDPOINT");
      env != nullptr && *env != '\0' &&
      p.forecaster == ForecasterKind::kExternal) {
    p.endpoint = env;
  }
  Guarded(where, [&] {
    ValidatePolicy(p);
    return 0;
  });
  return p;
}

void ApplyOutputOverride(std::string* output_dir) {
  if (const char* env = std::getenv("UDUO_OUTPUT_DIR");
      env != nullptr && *env != '\0') {
    *output_dir = env;
  }
}

std::string PacingName(PacingKind kind) {
  return kind == PacingKind::kTemporal ? "temporal" : "uniform";
}

std::string ForecasterName(const PolicySpec& p) {
  switch (p.forecaster) {
    case ForecasterKind::kOracle: return "oracle";
    case ForecasterKind::kExternal: return "external";
    case ForecasterKind::kBuiltin: return std::string(MethodName(p.method));
  }
  return "oracle";
}

Json StreamJson(const StreamConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["slots_per_day"] = c.slots_per_day;
  j["regime"] = std::string(RegimeName(c.regime));
  j["base_rate"] = c.base_rate;
  if (c.end_rate) j["end_rate"] = *c.end_rate;
  j["shift_slot"] = c.shift_slot;
  j["sin_amplitude"] = c.sin_amplitude;
  j["weights_start"] = c.weights_start;
  j["weights_end"] = c.weights_end;
  j["archetypes"] = Json::array();
  for (const Archetype& a : c.archetypes) {
    j["archetypes"].push_back(
        {{"rewards", a.rewards}, {"costs", a.costs}, {"noise", a.noise}});
  }
  j["peaks"] = Json::array();
  for (const Peak& p : c.peaks) {
    j["peaks"].push_back(
        {{"slot", p.slot}, {"amplitude", p.amplitude}, {"width", p.width}});
  }
  return j;
}

Json PolicyJson(const PolicySpec& p) {
  Json j;
  j["name"] = p.name;
  j["kind"] = std::string(PolicyKindName(p.kind));
  j["forecaster"] = ForecasterName(p);
  j["fallback"] = std::string(MethodName(p.method));
  j["endpoint"] = p.endpoint;
  j["scene_id"] = p.scene_id;
  j["pacing"] = PacingName(p.pacing);
  j["floor_fraction"] = p.floor_fraction;
  j["grid_epsilon"] = p.grid_epsilon;
  j["grid_k"] = p.grid_k;
  j["tolerance"] = p.tolerance;
  j["ogd_step"] = p.ogd_step;
  j["backcast_length"] = p.backcast_length;
  j["horizon"] = p.horizon;
  j["rollover"] = p.rollover;
  j["season_length"] = p.forecast_params.season_length;
  j["alpha"] = p.forecast_params.alpha;
  j["ar_order"] = p.forecast_params.ar_order;
  j["ridge"] = p.forecast_params.ridge;
  return j;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

StreamConfig ParseStreamConfigText(const std::string& text) {
  return ParseStream(ParseText(text));
}

SimulateConfig ParseSimulateConfig(const std::string& text) {
  const Json j = ParseText(text);
  const std::string where = "config";
  CheckKeys(j, where,
            {"output_dir", "stream", "budget", "budget_greedy_fraction",
             "history_days", "seeds", "policies", "compute_dual_bound"});
  SimulateConfig c;
  Read(j, "output_dir", where, &c.output_dir);
  ApplyOutputOverride(&c.output_dir);
  if (!j.contains("stream")) Fail("config.stream is required");
  c.stream = ParseStream(j.at("stream"));
  if (j.contains("budget") == j.contains("budget_greedy_fraction")) {
    Fail("exactly one of budget and budget_greedy_fraction is required");
  }
  if (j.contains("budget")) {
    c.budget = ReadNumber(j, "budget", where);
    if (!(*c.budget >= 0.0)) Fail("budget must be >= 0");
  } else {
    c.budget_greedy_fraction = ReadNumber(j, "budget_greedy_fraction", where);
    if (!(*c.budget_greedy_fraction >= 0.0)) {
      Fail("budget_greedy_fraction must be >= 0");
    }
  }
  Read(j, "history_days", where, &c.history_days);
  if (c.history_days < 1) Fail("history_days must be >= 1");
  Read(j, "seeds", where, &c.seeds);
  if (c.seeds.empty()) Fail("seeds must be a non-empty array");
  Read(j, "compute_dual_bound", where, &c.compute_dual_bound);
  if (!j.contains("policies") || !j.at("policies").is_array()) {
    Fail("config.policies must be an array");
  }
  for (const Json& p : j.at("policies")) c.policies.push_back(ParsePolicy(p));
  if (c.policies.size() < 2) Fail("at least two policies are required");
  return c;
}

ForecastEvalConfig ParseForecastEvalConfig(const std::string& text) {
  const Json j = ParseText(text);
  const std::string where = "config";
  CheckKeys(j, where,
            {"output_dir", "stream", "days", "repeat_day", "grid", "series_csv",
             "backcast_length", "horizons", "methods", "stride",
             "season_length", "alpha", "ar_order", "ridge"});
  ForecastEvalConfig c;
  Read(j, "output_dir", where, &c.output_dir);
  ApplyOutputOverride(&c.output_dir);
  if (j.contains("stream") == j.contains("series_csv")) {
    Fail("exactly one of stream and series_csv is required");
  }
  if (j.contains("stream")) c.stream = ParseStream(j.at("stream"));
  Read(j, "series_csv", where, &c.series_csv);
  Read(j, "days", where, &c.days);
  if (c.days < 1) Fail("days must be >= 1");
  Read(j, "repeat_day", where, &c.repeat_day);
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    CheckKeys(g, "grid", {"lambda_warm", "epsilon", "k"});
    Read(g, "lambda_warm", "grid", &c.grid.lambda_warm);
    Read(g, "epsilon", "grid", &c.grid.epsilon);
    Read(g, "k", "grid", &c.grid.k_count);
    Guarded("grid", [&] {
      return BuildGrid(c.grid.lambda_warm, c.grid.epsilon, c.grid.k_count)
          .size();
    });
  }
  Read(j, "backcast_length", where, &c.backcast_length);
  if (c.backcast_length < 1) Fail("backcast_length must be >= 1");
  Read(j, "horizons", where, &c.horizons);
  if (c.horizons.empty()) Fail("horizons must be non-empty");
  for (int h : c.horizons) {
    if (h < 1) Fail("horizons must be >= 1");
  }
  if (j.contains("methods")) {
    std::vector<std::string> names;
    Read(j, "methods", where, &names);
    c.methods.clear();
    for (const auto& n : names) {
      c.methods.push_back(Guarded(where, [&] { return ParseMethod(n); }));
    }
    if (c.methods.empty()) Fail("methods must be non-empty");
  }
  Read(j, "stride", where, &c.stride);
  Read(j, "season_length", where, &c.params.season_length);
  Read(j, "alpha", where, &c.params.alpha);
  Read(j, "ar_order", where, &c.params.ar_order);
  Read(j, "ridge", where, &c.params.ridge);
  if (!(c.params.alpha > 0.0 && c.params.alpha <= 1.0)) {
    Fail("alpha must lie in (0, 1]");
  }
  if (c.params.ar_order < 1) Fail("ar_order must be >= 1");
  if (!(c.params.ridge >= 0.0)) Fail("ridge must be >= 0");
  return c;
}

std::string ToJson(const StreamConfig& config) {
  return Dump(StreamJson(config));
}

std::string ToJson(const SimulateConfig& config) {
  Json j;
  j["output_dir"] = config.output_dir;
  j["stream"] = StreamJson(config.stream);
  if (config.budget) j["budget"] = *config.budget;
  if (config.budget_greedy_fraction) {
    j["budget_greedy_fraction"] = *config.budget_greedy_fraction;
  }
  j["history_days"] = config.history_days;
  j["seeds"] = config.seeds;
  j["compute_dual_bound"] = config.compute_dual_bound;
  j["policies"] = Json::array();
  for (const auto& p : config.policies) j["policies"].push_back(PolicyJson(p));
  return Dump(j);
}

std::string ToJson(const ForecastEvalConfig& config) {
  Json j;
  j["output_dir"] = config.output_dir;
  if (config.stream) {
    j["stream"] = StreamJson(*config.stream);
  } else {
    j["series_csv"] = config.series_csv;
  }
  j["days"] = config.days;
  j["repeat_day"] = config.repeat_day;
  j["grid"] = {{"lambda_warm", config.grid.lambda_warm},
               {"epsilon", config.grid.epsilon},
               {"k", config.grid.k_count}};
  j["backcast_length"] = config.backcast_length;
  j["horizons"] = config.horizons;
  j["methods"] = Json::array();
  for (ForecastMethod m : config.methods) {
    j["methods"].push_back(std::string(MethodName(m)));
  }
  j["stride"] = config.stride;
  j["season_length"] = config.params.season_length;
  j["alpha"] = config.params.alpha;
  j["ar_order"] = config.params.ar_order;
  j["ridge"] = config.params.ridge;
  return Dump(j);
}

}  // namespace uduo
