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

#include "uduo/instance_io.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "json.hpp"
#include "uduo/error.h"

namespace uduo {

using nlohmann::json;

std::string FormatReal(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kNonFinite, "cannot serialize non-finite value");
  }
  return fmt::format("{:.17g}", value);
}

std::string FormatRealArray(std::span<const double> values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatReal(values[i]);
  }
  out += ']';
  return out;
}

void WriteInstance(std::ostream& out, const AllocationInstance& instance,
                   std::optional<int> slot_count) {
  out << "{\"budget\":" << FormatReal(instance.budget)
      << ",\"treatment_count\":" << instance.catalog.count
      << ",\"includes_null\":"
      << (instance.catalog.includes_null ? "true" : "false");
  if (slot_count) out << ",\"slot_count\":" << *slot_count;
  out << "}\n";
  for (const UserResponse& user : instance.users) {
    out << "{\"user_id\":" << user.user_id
        << ",\"arrival_time\":" << FormatReal(user.arrival_time)
        << ",\"rewards\":" << FormatRealArray(user.rewards)
        << ",\"costs\":" << FormatRealArray(user.costs) << "}\n";
  }
}

void WriteInstanceFile(const std::string& path,
                       const AllocationInstance& instance,
                       std::optional<int> slot_count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  WriteInstance(out, instance, slot_count);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

namespace {

void RequireKeys(const json& obj, const std::set<std::string>& required,
                 const std::set<std::string>& optional, int line_no) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParse,
                fmt::format("line {}: expected a JSON object", line_no));
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: missing key '{}'", line_no, key));
    }
  }
  for (const auto& [key, value] : obj.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: unknown key '{}'", line_no, key));
    }
  }
}

std::vector<double> ReadRealArray(const json& value, const char* name,
                                  int line_no) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kParse,
                fmt::format("line {}: '{}' must be an array", line_no, name));
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& v : value) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: '{}' holds a non-number", line_no,
                              name));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

InstanceFile ReadInstance(std::istream& in) {
  InstanceFile file;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: {}", line_no, e.what()));
    }
    try {
      if (!have_header) {
        RequireKeys(obj, {"budget", "treatment_count"},
                    {"includes_null", "slot_count"}, line_no);
        file.instance.budget = obj.at("budget").get<double>();
        file.instance.catalog.count = obj.at("treatment_count").get<int>();
        file.instance.catalog.includes_null =
            obj.value("includes_null", false);
        if (obj.contains("slot_count")) {
          file.slot_count = obj.at("slot_count").get<int>();
        }
        have_header = true;
        continue;
      }
      RequireKeys(obj, {"user_id", "rewards", "costs"}, {"arrival_time"},
                  line_no);
      UserResponse user;
      user.user_id = obj.at("user_id").get<int64_t>();
      user.arrival_time = obj.value("arrival_time", 0.0);
      user.rewards = ReadRealArray(obj.at("rewards"), "rewards", line_no);
      user.costs = ReadRealArray(obj.at("costs"), "costs", line_no);
      file.instance.users.push_back(std::move(user));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "missing header record");
  return file;
}

InstanceFile ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadInstance(in);
}

AllocationInstance FlattenStream(const SlottedUsers& stream, double budget) {
  AllocationInstance instance;
  instance.budget = budget;
  for (const auto& slot : stream) {
    for (const UserResponse& user : slot) instance.users.push_back(user);
  }
  instance.catalog.includes_null = true;
  instance.catalog.count =
      instance.users.empty() ? 1 : instance.users.front().num_treatments();
  return instance;
}

SlottedUsers SlotUsers(const AllocationInstance& instance, int slot_count) {
  SlottedUsers out(slot_count);
  for (const UserResponse& user : instance.users) {
    const int t = static_cast<int>(std::floor(user.arrival_time));
    if (t < 0 || t >= slot_count) {
      throw Error(ErrorCode::kInvalidSlot,
                  fmt::format("user {} arrival_time {} outside [0, {})",
                              user.user_id, user.arrival_time, slot_count));
    }
    out[t].push_back(user);
  }
  return out;
}

}  // namespace uduo
