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

#include "uduo/forecasting.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "uduo/core_model.h"
#include "uduo/error.h"

namespace uduo {

SlidingWindow::SlidingWindow(int backcast_length, int width)
    : backcast_length_(backcast_length), width_(width) {
  if (backcast_length < 1) {
    throw Error(ErrorCode::kInvalidParameter, "backcast length must be >= 1");
  }
  if (width < 1) {
    throw Error(ErrorCode::kInvalidParameter, "window width must be >= 1");
  }
}

void SlidingWindow::Push(std::vector<double> row) {
  if (static_cast<int>(row.size()) != width_) {
    throw Error(ErrorCode::kLengthMismatch,
                "row of width " + std::to_string(row.size()) +
                    " pushed onto window of width " + std::to_string(width_));
  }
  rows_.push_back(std::move(row));
  while (static_cast<int>(rows_.size()) > backcast_length_) rows_.pop_front();
  ++current_slot_;
}

SlidingWindow WindowPush(SlidingWindow window, std::vector<double> row) {
  window.Push(std::move(row));
  return window;
}

std::string_view MethodName(ForecastMethod method) {
  switch (method) {
    case ForecastMethod::kNaive: return "naive";
    case ForecastMethod::kSeasonalNaive: return "seasonal_naive";
    case ForecastMethod::kExpSmoothing: return "exp_smoothing";
    case ForecastMethod::kAutoRegressive: return "auto_regressive";
  }
  return "unknown";
}

ForecastMethod ParseMethod(std::string_view name) {
  for (ForecastMethod m :
       {ForecastMethod::kNaive, ForecastMethod::kSeasonalNaive,
        ForecastMethod::kExpSmoothing, ForecastMethod::kAutoRegressive}) {
    if (MethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidParameter,
              "unknown forecast method '" + std::string(name) + "'");
}

std::string_view SourceName(ForecastSource source) {
  switch (source) {
    case ForecastSource::kNaive: return "naive";
    case ForecastSource::kSeasonalNaive: return "seasonal_naive";
    case ForecastSource::kExpSmoothing: return "exp_smoothing";
    case ForecastSource::kAutoRegressive: return "auto_regressive";
    case ForecastSource::kExternal: return "external";
    case ForecastSource::kOracle: return "oracle";
  }
  return "unknown";
}

namespace {

ForecastSource SourceOf(ForecastMethod method) {
  switch (method) {
    case ForecastMethod::kNaive: return ForecastSource::kNaive;
    case ForecastMethod::kSeasonalNaive: return ForecastSource::kSeasonalNaive;
    case ForecastMethod::kExpSmoothing: return ForecastSource::kExpSmoothing;
    case ForecastMethod::kAutoRegressive:
      return ForecastSource::kAutoRegressive;
  }
  return ForecastSource::kNaive;
}

std::vector<double> ForecastExpSmoothing(const std::vector<double>& column,
                                         int horizon, double alpha) {
  double level = column.front();
  for (size_t t = 1; t < column.size(); ++t) {
    // Equal values leave the level untouched, so constants are fixed points.
    if (column[t] != level) level = alpha * column[t] + (1.0 - alpha) * level;
  }
  return std::vector<double>(horizon, level);
}

// Ridge-regularized AR(p) with an unpenalized intercept, fit on the
// mean-centered column and iterated forward for multi-step forecasts.
std::vector<double> ForecastAutoRegressive(const std::vector<double>& column,
                                           int horizon, int order,
                                           double ridge) {
  const int n = static_cast<int>(column.size());
  if (std::all_of(column.begin(), column.end(),
                  [&](double v) { return v == column.front(); })) {
    return std::vector<double>(horizon, column.front());
  }
  double mean = 0.0;
  for (double v : column) mean += v;
  mean /= n;
  std::vector<double> z(n);
  for (int t = 0; t < n; ++t) z[t] = column[t] - mean;

  const int samples = n - order;
  Eigen::MatrixXd x(samples, order + 1);
  Eigen::VectorXd y(samples);
  for (int s = 0; s < samples; ++s) {
    const int t = order + s;
    x(s, 0) = 1.0;
    for (int j = 1; j <= order; ++j) x(s, j) = z[t - j];
    y(s) = z[t];
  }
  Eigen::MatrixXd normal = x.transpose() * x;
  for (int j = 1; j <= order; ++j) normal(j, j) += ridge;
  const Eigen::VectorXd beta = normal.ldlt().solve(x.transpose() * y);

  std::vector<double> history = z;
  std::vector<double> out(horizon);
  for (int h = 0; h < horizon; ++h) {
    double pred = beta(0);
    const int last = static_cast<int>(history.size()) - 1;
    for (int j = 1; j <= order; ++j) pred += beta(j) * history[last - j + 1];
    history.push_back(pred);
    out[h] = mean + pred;
  }
  return out;
}

}  // namespace

ForecastResult Forecast(const SlidingWindow& window, int horizon,
                        ForecastMethod method, const ForecastParams& params) {
  if (horizon < 1) {
    throw Error(ErrorCode::kInvalidParameter, "horizon must be >= 1");
  }
  if (window.empty()) {
    throw Error(ErrorCode::kInsufficientHistory, "empty window");
  }
  const int n = window.size();
  switch (method) {
    case ForecastMethod::kSeasonalNaive:
      if (params.season_length < 1) {
        throw Error(ErrorCode::kInvalidParameter, "season_length must be >= 1");
      }
      if (n < params.season_length) {
        throw Error(ErrorCode::kInsufficientHistory,
                    "window holds " + std::to_string(n) +
                        " rows, season needs " +
                        std::to_string(params.season_length));
      }
      break;
    case ForecastMethod::kExpSmoothing:
      if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "alpha must lie in (0, 1]");
      }
      break;
    case ForecastMethod::kAutoRegressive:
      if (params.ar_order < 1 || !(params.ridge >= 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "bad AR parameters");
      }
      if (n <= params.ar_order) {
        throw Error(ErrorCode::kInsufficientHistory,
                    "AR(" + std::to_string(params.ar_order) + ") needs more than " +
                        std::to_string(params.ar_order) + " rows");
      }
      break;
    case ForecastMethod::kNaive:
      break;
  }

  const int width = window.width();
  ForecastResult result;
  result.horizon = horizon;
  result.source = SourceOf(method);
  result.rows.assign(horizon, std::vector<double>(width));

#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 0; k < width; ++k) {
    std::vector<double> column(n);
    for (int t = 0; t < n; ++t) column[t] = window.row(t)[k];
    std::vector<double> pred;
    switch (method) {
      case ForecastMethod::kNaive:
        pred.assign(horizon, column.back());
        break;
      case ForecastMethod::kSeasonalNaive: {
        const int s = params.season_length;
        pred.resize(horizon);
        for (int h = 0; h < horizon; ++h) pred[h] = column[n - s + (h % s)];
        break;
      }
      case ForecastMethod::kExpSmoothing:
        pred = ForecastExpSmoothing(column, horizon, params.alpha);
        break;
      case ForecastMethod::kAutoRegressive:
        pred = ForecastAutoRegressive(column, horizon, params.ar_order,
                                      params.ridge);
        break;
    }
    for (int h = 0; h < horizon; ++h) result.rows[h][k] = pred[h];
  }
  for (auto& row : result.rows) row = RepairRow(row);
  return result;
}

std::vector<double> PoolAdjacentViolators(std::span<const double> values) {
  struct Block {
    double sum;
    int count;
    double mean() const { return sum / count; }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

std::vector<double> RepairRow(std::span<const double> row) {
  if (RowHasArrivalShape(row)) return {row.begin(), row.end()};
  const int n = static_cast<int>(row.size());
  if (n == 1) return {std::max(0.0, row[0])};

  // Convex and non-increasing means the first differences are non-decreasing
  // and non-positive.
  std::vector<double> diffs(n - 1);
  for (int k = 0; k + 1 < n; ++k) diffs[k] = row[k + 1] - row[k];
  diffs = PoolAdjacentViolators(diffs);
  for (double& d : diffs) d = std::min(d, 0.0);

  std::vector<double> offsets(n, 0.0);
  for (int k = 1; k < n; ++k) offsets[k] = offsets[k - 1] + diffs[k - 1];
  double row_mean = 0.0;
  double offset_mean = 0.0;
  for (int k = 0; k < n; ++k) {
    row_mean += row[k];
    offset_mean += offsets[k];
  }
  const double anchor = (row_mean - offset_mean) / n;
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = std::max(0.0, anchor + offsets[k]);
  return out;
}

namespace {

void CheckShapes(const Matrix& truth, const Matrix& predicted) {
  bool ok = truth.size() == predicted.size();
  for (size_t i = 0; ok && i < truth.size(); ++i) {
    ok = truth[i].size() == predicted[i].size();
  }
  if (!ok) throw Error(ErrorCode::kShapeMismatch, "metric inputs differ");
}

}  // namespace

double Mse(const Matrix& truth, const Matrix& predicted) {
  CheckShapes(truth, predicted);
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    for (size_t j = 0; j < truth[i].size(); ++j) {
      const double e = truth[i][j] - predicted[i][j];
      sum += e * e;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

double Mae(const Matrix& truth, const Matrix& predicted) {
  CheckShapes(truth, predicted);
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    for (size_t j = 0; j < truth[i].size(); ++j) {
      sum += std::abs(truth[i][j] - predicted[i][j]);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

}  // namespace uduo
