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

// Sliding-window forecasting of arrival-value rows.
//
// Each grid column (one lambda value) is forecast as an independent
// univariate series. Predicted rows are then repaired so that, like realized
// rows, they are non-negative, non-increasing and convex in lambda.

#ifndef UDUO_FORECASTING_H_
#define UDUO_FORECASTING_H_

#include <deque>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uduo {

using Matrix = std::vector<std::vector<double>>;

inline constexpr int kDefaultBackcastLength = 96;

// The most recent `backcast_length` rows, oldest first.
class SlidingWindow {
 public:
  SlidingWindow(int backcast_length, int width);

  // Appends a row and evicts the oldest beyond the backcast length. Throws
  // kLengthMismatch when the row width differs.
  void Push(std::vector<double> row);

  int backcast_length() const { return backcast_length_; }
  int width() const { return width_; }
  int size() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  // Number of rows ever pushed.
  int current_slot() const { return current_slot_; }
  const std::deque<std::vector<double>>& rows() const { return rows_; }
  const std::vector<double>& row(int i) const { return rows_[i]; }
  Matrix ToMatrix() const { return {rows_.begin(), rows_.end()}; }

 private:
  int backcast_length_;
  int width_;
  int current_slot_ = 0;
  std::deque<std::vector<double>> rows_;
};

SlidingWindow WindowPush(SlidingWindow window, std::vector<double> row);

enum class ForecastMethod {
  kNaive,
  kSeasonalNaive,
  kExpSmoothing,
  kAutoRegressive,
};

enum class ForecastSource {
  kNaive,
  kSeasonalNaive,
  kExpSmoothing,
  kAutoRegressive,
  kExternal,
  kOracle,
};

std::string_view MethodName(ForecastMethod method);
// Throws kInvalidParameter on an unknown name.
ForecastMethod ParseMethod(std::string_view name);
std::string_view SourceName(ForecastSource source);

struct ForecastParams {
  int season_length = 96;
  double alpha = 0.3;
  int ar_order = 4;
  double ridge = 1e-3;
};

struct ForecastResult {
  int horizon = 0;
  Matrix rows;
  ForecastSource source = ForecastSource::kNaive;
};

// Throws kInsufficientHistory on an empty window, a window shorter than one
// season (seasonal naive) or not longer than the AR order; kInvalidParameter
// on out-of-range parameters.
ForecastResult Forecast(const SlidingWindow& window, int horizon,
                        ForecastMethod method,
                        const ForecastParams& params = {});

// Projection onto non-negative, non-increasing, convex rows. Rows that
// already have that shape (within kShapeTolerance) are returned unchanged.
std::vector<double> RepairRow(std::span<const double> row);

// Isotonic (non-decreasing) least-squares fit by pool-adjacent-violators.
std::vector<double> PoolAdjacentViolators(std::span<const double> values);

// Mean over all entries; throws kShapeMismatch on differing shapes.
double Mse(const Matrix& truth, const Matrix& predicted);
double Mae(const Matrix& truth, const Matrix& predicted);

}  // namespace uduo

#endif  // UDUO_FORECASTING_H_
