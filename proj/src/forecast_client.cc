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

#include "uduo/forecast_client.h"

#include <istream>
#include <ostream>

#include "httplib.h"
#include "json.hpp"
#include "uduo/error.h"
#include "uduo/instance_io.h"

namespace uduo {

using nlohmann::json;

namespace {

std::string EncodeMatrix(const Matrix& rows) {
  std::string out = "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatRealArray(rows[i]);
  }
  out += ']';
  return out;
}

json ParseBody(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocolError,
                std::string("malformed JSON: ") + e.what());
  }
}

void CheckVersion(const json& obj) {
  if (!obj.is_object() || !obj.contains("version") ||
      !obj.at("version").is_number_integer()) {
    throw Error(ErrorCode::kProtocolError, "missing integer 'version'");
  }
  const int version = obj.at("version").get<int>();
  if (version != kForecastProtocolVersion) {
    throw Error(ErrorCode::kProtocolError,
                "unsupported protocol version " + std::to_string(version));
  }
}

std::vector<double> ToReals(const json& arr, const char* what) {
  if (!arr.is_array()) {
    throw Error(ErrorCode::kProtocolError, std::string(what) + " not an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kProtocolError,
                  std::string(what) + " holds a non-number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix ToMatrix(const json& arr, const char* what) {
  if (!arr.is_array()) {
    throw Error(ErrorCode::kProtocolError, std::string(what) + " not an array");
  }
  Matrix out;
  out.reserve(arr.size());
  for (const json& row : arr) out.push_back(ToReals(row, what));
  return out;
}

}  // namespace

std::string EncodeRequest(const ForecastRequest& request) {
  return "{\"version\":" + std::to_string(request.version) +
         ",\"scene_id\":" + json(request.scene_id).dump() +
         ",\"grid\":" + FormatRealArray(request.grid) +
         ",\"window\":" + EncodeMatrix(request.window) +
         ",\"horizon\":" + std::to_string(request.horizon) + "}";
}

ForecastRequest DecodeRequest(std::string_view body) {
  const json obj = ParseBody(body);
  CheckVersion(obj);
  ForecastRequest request;
  try {
    request.scene_id = obj.at("scene_id").get<std::string>();
    request.horizon = obj.at("horizon").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocolError, e.what());
  }
  if (!obj.contains("grid") || !obj.contains("window")) {
    throw Error(ErrorCode::kProtocolError, "missing 'grid' or 'window'");
  }
  request.grid = ToReals(obj.at("grid"), "grid");
  request.window = ToMatrix(obj.at("window"), "window");
  for (const auto& row : request.window) {
    if (row.size() != request.grid.size()) {
      throw Error(ErrorCode::kProtocolError, "window row width != grid size");
    }
  }
  if (request.horizon < 1) {
    throw Error(ErrorCode::kProtocolError, "horizon must be >= 1");
  }
  return request;
}

std::string EncodeResponse(const Matrix& forecast) {
  return "{\"version\":" + std::to_string(kForecastProtocolVersion) +
         ",\"forecast\":" + EncodeMatrix(forecast) + "}";
}

std::string EncodeErrorResponse(std::string_view code,
                                std::string_view message) {
  json obj = {{"version", kForecastProtocolVersion},
              {"error", {{"code", code}, {"message", message}}}};
  return obj.dump();
}

Matrix DecodeResponse(std::string_view body, int horizon, int width) {
  const json obj = ParseBody(body);
  if (obj.is_object() && obj.contains("error")) {
    const json& err = obj.at("error");
    std::string code = "unknown";
    std::string message;
    if (err.is_object()) {
      code = err.value("code", code);
      message = err.value("message", message);
    }
    throw Error(ErrorCode::kProtocolError,
                "service error " + code + ": " + message);
  }
  CheckVersion(obj);
  if (!obj.contains("forecast")) {
    throw Error(ErrorCode::kProtocolError, "missing 'forecast'");
  }
  Matrix rows = ToMatrix(obj.at("forecast"), "forecast");
  if (static_cast<int>(rows.size()) != horizon) {
    throw Error(ErrorCode::kProtocolError,
                "expected " + std::to_string(horizon) + " rows, got " +
                    std::to_string(rows.size()));
  }
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != width) {
      throw Error(ErrorCode::kProtocolError,
                  "expected rows of width " + std::to_string(width));
    }
  }
  return rows;
}

HttpTransport::HttpTransport(std::string endpoint, double timeout_seconds)
    : port_(80), timeout_seconds_(timeout_seconds) {
  const std::string scheme = "http://";
  if (endpoint.rfind(scheme, 0) == 0) endpoint = endpoint.substr(scheme.size());
  while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();
  const auto colon = endpoint.rfind(':');
  if (colon != std::string::npos) {
    try {
      port_ = std::stoi(endpoint.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidParameter, "bad endpoint port");
    }
    endpoint = endpoint.substr(0, colon);
  }
  if (endpoint.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "empty endpoint host");
  }
  host_ = endpoint;
}

std::string HttpTransport::Exchange(const std::string& request_body) {
  httplib::Client client(host_, port_);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  const auto usecs =
      static_cast<time_t>((timeout_seconds_ - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  auto res = client.Post(kForecastPath, request_body, "application/json");
  if (!res) {
    throw Error(ErrorCode::kServiceUnavailable,
                host_ + ":" + std::to_string(port_) + " " +
                    httplib::to_string(res.error()));
  }
  if (res->status >= 500 && res->body.empty()) {
    throw Error(ErrorCode::kServiceUnavailable,
                "HTTP " + std::to_string(res->status));
  }
  // Error statuses carry structured payloads, decoded by the caller.
  return res->body;
}

std::string StdioTransport::Exchange(const std::string& request_body) {
  out_ << request_body << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kServiceUnavailable, "stdio write failed");
  std::string line;
  if (!std::getline(in_, line)) {
    throw Error(ErrorCode::kServiceUnavailable, "stdio peer closed");
  }
  return line;
}

ForecastResult RemoteForecast(const SlidingWindow& window,
                              const LambdaGrid& grid, int horizon,
                              const std::string& scene_id,
                              ForecastTransport& transport) {
  if (window.width() != grid.size()) {
    throw Error(ErrorCode::kLengthMismatch, "window width != grid size");
  }
  ForecastRequest request;
  request.scene_id = scene_id;
  request.grid = grid.values();
  request.window = window.ToMatrix();
  request.horizon = horizon;
  const std::string body = transport.Exchange(EncodeRequest(request));
  ForecastResult result;
  result.horizon = horizon;
  result.source = ForecastSource::kExternal;
  result.rows = DecodeResponse(body, horizon, grid.size());
  for (auto& row : result.rows) row = RepairRow(row);
  return result;
}

ForecastResult ForecastWithFallback(const SlidingWindow& window,
                                    const LambdaGrid& grid, int horizon,
                                    const std::string& scene_id,
                                    ForecastTransport& transport,
                                    ForecastMethod fallback,
                                    const ForecastParams& params) {
  try {
    return RemoteForecast(window, grid, horizon, scene_id, transport);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kServiceUnavailable) throw;
  }
  return Forecast(window, horizon, fallback, params);
}

}  // namespace uduo
