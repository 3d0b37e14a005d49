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

// Client side of the external forecast protocol.
//
// Request (HTTP POST /v1/forecast, or one line on the stdio transport):
//   {"version":1,"scene_id":"...","grid":[...],"window":[[...],...],
//    "horizon":H}
// Response:
//   {"version":1,"forecast":[[...],...]}      // exactly H rows of grid width
// or, on failure:
//   {"version":1,"error":{"code":"...","message":"..."}}
// Reals travel as 17-significant-digit decimals.

#ifndef UDUO_FORECAST_CLIENT_H_
#define UDUO_FORECAST_CLIENT_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uduo/core_model.h"
#include "uduo/forecasting.h"

namespace uduo {

inline constexpr int kForecastProtocolVersion = 1;
inline constexpr const char* kForecastPath = "/v1/forecast";

struct ForecastRequest {
  int version = kForecastProtocolVersion;
  std::string scene_id;
  std::vector<double> grid;
  Matrix window;
  int horizon = 1;
};

std::string EncodeRequest(const ForecastRequest& request);
// Throws kProtocolError on malformed input.
ForecastRequest DecodeRequest(std::string_view body);

std::string EncodeResponse(const Matrix& forecast);
std::string EncodeErrorResponse(std::string_view code, std::string_view message);
// Validates version, error payloads and shape. Throws kProtocolError.
Matrix DecodeResponse(std::string_view body, int horizon, int width);

class ForecastTransport {
 public:
  virtual ~ForecastTransport() = default;
  // Sends one request body and returns the response body. Throws
  // kServiceUnavailable when the peer cannot be reached.
  virtual std::string Exchange(const std::string& request_body) = 0;
};

// "http://host:port", "host:port" or "host" (port 80).
class HttpTransport : public ForecastTransport {
 public:
  explicit HttpTransport(std::string endpoint, double timeout_seconds = 5.0);
  std::string Exchange(const std::string& request_body) override;

 private:
  std::string host_;
  int port_;
  double timeout_seconds_;
};

// Line-delimited JSON over a pair of streams.
class StdioTransport : public ForecastTransport {
 public:
  StdioTransport(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string Exchange(const std::string& request_body) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

// Sends the window over the transport and repairs the returned rows. The
// result's source is kExternal.
ForecastResult RemoteForecast(const SlidingWindow& window,
                              const LambdaGrid& grid, int horizon,
                              const std::string& scene_id,
                              ForecastTransport& transport);

// RemoteForecast, falling back to a built-in method when the service is
// unavailable. Protocol errors still propagate.
ForecastResult ForecastWithFallback(const SlidingWindow& window,
                                    const LambdaGrid& grid, int horizon,
                                    const std::string& scene_id,
                                    ForecastTransport& transport,
                                    ForecastMethod fallback,
                                    const ForecastParams& params = {});

}  // namespace uduo

#endif  // UDUO_FORECAST_CLIENT_H_
