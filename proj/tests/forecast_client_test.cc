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

#include <cstring>
#include <random>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "test_support.h"

namespace uduo {
namespace {

using testing::CodeOf;

// In-process stand-in for the forecast service. By default it echoes the
// last window row `horizon` times; `mode` selects misbehaviours.
class EchoServer {
 public:
  enum class Mode { kEchoLast, kEchoWindow, kWrongRowCount, kWrongVersion };

  explicit EchoServer(Mode mode = Mode::kEchoLast) : mode_(mode) {
    server_.Post(kForecastPath, [this](const httplib::Request& req,
                                       httplib::Response& res) {
      Handle(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~EchoServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

 private:
  void Handle(const httplib::Request& req, httplib::Response& res) {
    ForecastRequest request;
    try {
      request = DecodeRequest(req.body);
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(EncodeErrorResponse("bad_request", e.what()),
                      "application/json");
      return;
    }
    Matrix out;
    switch (mode_) {
      case Mode::kEchoLast:
      case Mode::kWrongVersion:
        out.assign(request.horizon, request.window.back());
        break;
      case Mode::kEchoWindow:
        out = request.window;
        break;
      case Mode::kWrongRowCount:
        out.assign(request.horizon + 1, request.window.back());
        break;
    }
    std::string body = EncodeResponse(out);
    if (mode_ == Mode::kWrongVersion) {
      body.replace(body.find("\"version\":1"), 11, "\"version\":2");
    }
    res.set_content(body, "application/json");
  }

  Mode mode_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

SlidingWindow ShapedWindow(int rows, const LambdaGrid& grid, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.1, 9.0);
  SlidingWindow w(rows, grid.size());
  for (int t = 0; t < rows; ++t) {
    const double m = mass(rng);
    std::vector<double> row;
    for (int k = 0; k < grid.size(); ++k) {
      row.push_back(m * std::max(0.0, 1.0 - grid.value(k) / 3.0));
    }
    w.Push(row);
  }
  return w;
}

bool BitEqual(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    if (std::memcmp(a[i].data(), b[i].data(), a[i].size() * sizeof(double))) {
      return false;
    }
  }
  return true;
}

TEST(ProtocolCodecTest, RequestRoundTripIsBitExact) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  ForecastRequest r;
  r.scene_id = "city-\"7\"";
  r.horizon = 3;
  for (int k = 0; k < 9; ++k) r.grid.push_back(d(rng));
  r.window.assign(5, std::vector<double>(9));
  for (auto& row : r.window) {
    for (auto& v : row) v = d(rng) / 7.0;
  }
  const ForecastRequest back = DecodeRequest(EncodeRequest(r));
  EXPECT_EQ(back.scene_id, r.scene_id);
  EXPECT_EQ(back.horizon, 3);
  EXPECT_EQ(back.version, kForecastProtocolVersion);
  EXPECT_TRUE(BitEqual({back.grid}, {r.grid}));
  EXPECT_TRUE(BitEqual(back.window, r.window));
}

TEST(ProtocolCodecTest, ResponseShapeAndVersionChecked) {
  const Matrix rows(2, std::vector<double>(3, 0.5));
  EXPECT_EQ(DecodeResponse(EncodeResponse(rows), 2, 3), rows);
  EXPECT_EQ(CodeOf([&] { DecodeResponse(EncodeResponse(rows), 3, 3); }),
            ErrorCode::kProtocolError);
  EXPECT_EQ(CodeOf([&] { DecodeResponse(EncodeResponse(rows), 2, 4); }),
            ErrorCode::kProtocolError);
  EXPECT_EQ(CodeOf([] {
              DecodeResponse("{\"version\":2,\"forecast\":[]}", 0, 1);
            }),
            ErrorCode::kProtocolError);
  EXPECT_EQ(CodeOf([] {
              DecodeResponse(EncodeErrorResponse("busy", "try later"), 1, 1);
            }),
            ErrorCode::kProtocolError);
  EXPECT_EQ(CodeOf([] { DecodeResponse("not json", 1, 1); }),
            ErrorCode::kProtocolError);
}

TEST(ProtocolCodecTest, RequestVersionChecked) {
  ForecastRequest r;
  r.grid = {0.0};
  r.window = {{1.0}};
  std::string body = EncodeRequest(r);
  body.replace(body.find("\"version\":1"), 11, "\"version\":9");
  EXPECT_EQ(CodeOf([&] { DecodeRequest(body); }), ErrorCode::kProtocolError);
}

TEST(RemoteForecastTest, EchoServiceMatchesNaive) {
  EchoServer server;
  const LambdaGrid grid = BuildGrid(1.0, 0.05, 20);
  const SlidingWindow w = ShapedWindow(10, grid, 1);
  HttpTransport transport(server.endpoint());
  const ForecastResult remote = RemoteForecast(w, grid, 4, "s", transport);
  const ForecastResult naive = Forecast(w, 4, ForecastMethod::kNaive);
  EXPECT_EQ(remote.source, ForecastSource::kExternal);
  EXPECT_EQ(remote.rows, naive.rows);
}

TEST(RemoteForecastTest, WindowRoundTripsBitExactly) {
  EchoServer server(EchoServer::Mode::kEchoWindow);
  const LambdaGrid grid = BuildGrid(0.7, 0.01, 100);
  const SlidingWindow w = ShapedWindow(24, grid, 2);
  HttpTransport transport(server.endpoint());
  const ForecastResult r = RemoteForecast(w, grid, 24, "s", transport);
  EXPECT_TRUE(BitEqual(r.rows, w.ToMatrix()));
}

TEST(RemoteForecastTest, MalformedServiceRepliesAreProtocolErrors) {
  const LambdaGrid grid = BuildGrid(1.0, 0.1, 4);
  const SlidingWindow w = ShapedWindow(3, grid, 3);
  {
    EchoServer server(EchoServer::Mode::kWrongRowCount);
    HttpTransport t(server.endpoint());
    EXPECT_EQ(CodeOf([&] { RemoteForecast(w, grid, 2, "s", t); }),
              ErrorCode::kProtocolError);
  }
  {
    EchoServer server(EchoServer::Mode::kWrongVersion);
    HttpTransport t(server.endpoint());
    EXPECT_EQ(CodeOf([&] { RemoteForecast(w, grid, 2, "s", t); }),
              ErrorCode::kProtocolError);
  }
}

TEST(RemoteForecastTest, ServiceRejectsBadVersionWithStructuredError) {
  EchoServer server;
  ForecastRequest r;
  r.grid = {0.0, 1.0};
  r.window = {{1.0, 0.0}};
  std::string body = EncodeRequest(r);
  body.replace(body.find("\"version\":1"), 11, "\"version\":3");
  HttpTransport t(server.endpoint());
  const std::string reply = t.Exchange(body);
  EXPECT_NE(reply.find("\"error\""), std::string::npos);
  EXPECT_NE(reply.find("bad_request"), std::string::npos);
}

TEST(RemoteForecastTest, UnreachableServiceFallsBack) {
  // Bind then release a port so nothing listens on it.
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  const LambdaGrid grid = BuildGrid(1.0, 0.1, 4);
  const SlidingWindow w = ShapedWindow(30, grid, 4);
  HttpTransport transport("127.0.0.1:" + std::to_string(port), 0.5);
  EXPECT_EQ(CodeOf([&] { RemoteForecast(w, grid, 2, "s", transport); }),
            ErrorCode::kServiceUnavailable);
  const ForecastResult r = ForecastWithFallback(
      w, grid, 2, "s", transport, ForecastMethod::kExpSmoothing);
  EXPECT_EQ(r.source, ForecastSource::kExpSmoothing);
  EXPECT_EQ(r.rows, Forecast(w, 2, ForecastMethod::kExpSmoothing).rows);
}

TEST(StdioTransportTest, LineDelimitedExchange) {
  const LambdaGrid grid = BuildGrid(1.0, 0.1, 4);
  const SlidingWindow w = ShapedWindow(5, grid, 5);
  const Matrix reply_rows(2, w.ToMatrix().back());
  std::istringstream in(EncodeResponse(reply_rows) + "\n");
  std::ostringstream out;
  StdioTransport transport(in, out);
  const ForecastResult r = RemoteForecast(w, grid, 2, "scene", transport);
  EXPECT_EQ(r.rows, reply_rows);
  const std::string sent = out.str();
  ASSERT_FALSE(sent.empty());
  EXPECT_EQ(sent.back(), '\n');
  const ForecastRequest req = DecodeRequest(sent.substr(0, sent.size() - 1));
  EXPECT_EQ(req.scene_id, "scene");
  EXPECT_TRUE(BitEqual(req.window, w.ToMatrix()));
}

TEST(StdioTransportTest, ClosedPeerIsUnavailable) {
  std::istringstream in("");
  std::ostringstream out;
  StdioTransport transport(in, out);
  EXPECT_EQ(CodeOf([&] { transport.Exchange("{}"); }),
            ErrorCode::kServiceUnavailable);
}

TEST(HttpTransportTest, EndpointForms) {
  EXPECT_NO_THROW(HttpTransport("http://localhost:8080/"));
  EXPECT_NO_THROW(HttpTransport("localhost:8080"));
  EXPECT_NO_THROW(HttpTransport("localhost"));
  EXPECT_EQ(CodeOf([] { HttpTransport("http://:80"); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { HttpTransport("host:port"); }),
            ErrorCode::kInvalidParameter);
}

}  // namespace
}  // namespace uduo
