// Copyright 2026 The axedp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Utility and leakage statistics over published series and simulated paths.

#ifndef AXEDP_METRICS_H_
#define AXEDP_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "axedp/dp_core.h"
#include "axedp/finance.h"
#include "axedp/kernels.h"

namespace axedp {

// Default attacker lags in business days.
inline const std::vector<int>& DefaultLags() {
  static const std::vector<int> lags = {1, 5, 10};
  return lags;
}

absl::Status ValidateLags(std::span<const int> lags, std::size_t length);

// Raw counts behind a leakage probability.
absl::StatusOr<kernels::LeakCount> CountLeakage(
    std::span<const Shares> client, std::span<const Shares> published, int lag);

// Fraction of lagged client moves whose direction the published series
// reveals with the opposite sign. Days without a client move are excluded;
// a flat published move is not a leak. Returns 0 when no client move exists.
absl::StatusOr<double> LeakageProbability(std::span<const Shares> client,
                                          std::span<const Shares> published,
                                          int lag);

inline double LeakRatio(const kernels::LeakCount& count) {
  return count.eligible == 0 ? 0.0
                             : static_cast<double>(count.leaks) /
                                   static_cast<double>(count.eligible);
}

// Fraction of days on which the published axe lies outside the profitability
// interval of the true axe. Requires positive rates on every day.
absl::StatusOr<double> OverAxeFrequency(std::span<const double> published,
                                        std::span<const double> truth,
                                        const QuoteSeries& quotes);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n); 0 when n == 1
  std::int64_t n = 0;
};

absl::StatusOr<Estimate> MeanWithStdError(std::span<const double> samples);

// Mean of a - b with its standard error, pairing elements by index.
absl::StatusOr<Estimate> PnlDifference(std::span<const double> a,
                                       std::span<const double> b);

inline constexpr int kDecileBins = 10;

struct DecileHistogram {
  std::array<std::int64_t, kDecileBins> counts{};

  std::int64_t total() const;
  static double BinLow(int bin) { return bin / 10.0; }
  static double BinHigh(int bin) { return (bin + 1) / 10.0; }
};

// Bins [0, .1), ..., [.8, .9), [.9, 1]. Samples must lie in [0, 1].
absl::StatusOr<DecileHistogram> MakeDecileHistogram(
    std::span<const double> samples);

// One point of a parameter sweep.
struct GridPoint {
  double epsilon = 0.0;
  int horizon = 0;
  int bucket = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct MetricRow {
  GridPoint point;
  std::string scenario;
  std::string metric;
  int lag = 0;  // 0 for metrics without a lag
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_paths = 0;
};

struct HistogramRow {
  GridPoint point;
  std::string scenario;
  std::string metric;
  int lag = 0;
  int bin = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
};

// One simulated day of one asset on one path.
struct PathRecord {
  GridPoint point;
  std::string scenario;
  std::int64_t path = 0;
  std::string asset;
  int day = 0;
  std::string date;  // may be empty for synthetic grids
  Shares a_hist = 0;
  Shares client = 0;
  Shares a_pre = 0;
  Shares a_pub = 0;
  Shares a_hit = 0;
  Shares a_post = 0;
  double pnl = 0.0;
  double over_axe = 0.0;
};

struct MetricsReport {
  std::vector<MetricRow> rows;
  std::vector<HistogramRow> histograms;
  std::vector<PathRecord> paths;
  // Key/value echo of the run configuration, in insertion order.
  std::vector<std::pair<std::string, std::string>> config;

  // Appends every row, histogram and path of `other`.
  void Append(MetricsReport other);

  // First row matching the selector, or nullptr.
  const MetricRow* Find(const GridPoint& point, absl::string_view scenario,
                        absl::string_view metric, int lag = 0) const;
};

// Mean/SE row plus, when `histogram` is set, its decile rows.
absl::Status AddSampleMetric(const GridPoint& point, std::string scenario,
                             std::string metric, int lag,
                             std::span<const double> samples, bool histogram,
                             MetricsReport& report);

}  // namespace axedp

#endif  // AXEDP_METRICS_H_
