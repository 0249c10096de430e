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

#include "axedp/metrics.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace axedp {

absl::Status ValidateLags(std::span<const int> lags, std::size_t length) {
  for (int lag : lags) {
    if (lag < 1 || static_cast<std::size_t>(lag) >= length) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lag ", lag, " must be in [1, ", length, ") for series of length ",
          length));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<kernels::LeakCount> CountLeakage(
    std::span<const Shares> client, std::span<const Shares> published,
    int lag) {
  if (client.size() != published.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("client and published series differ in length: ",
                     client.size(), " vs ", published.size()));
  }
  const int lags[] = {lag};
  if (absl::Status s = ValidateLags(lags, client.size()); !s.ok()) return s;
  return kernels::CountLeaks(client, published, static_cast<std::size_t>(lag));
}

absl::StatusOr<double> LeakageProbability(std::span<const Shares> client,
                                          std::span<const Shares> published,
                                          int lag) {
  absl::StatusOr<kernels::LeakCount> count =
      CountLeakage(client, published, lag);
  if (!count.ok()) return count.status();
  return LeakRatio(*count);
}

absl::StatusOr<double> OverAxeFrequency(std::span<const double> published,
                                        std::span<const double> truth,
                                        const QuoteSeries& quotes) {
  if (published.size() != truth.size() || truth.size() != quotes.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "misaligned series: published=", published.size(),
        " truth=", truth.size(), " quotes=", quotes.size()));
  }
  if (published.empty()) {
    return absl::InvalidArgumentError("over-axe frequency of empty series");
  }
  if (absl::Status s = quotes.ValidatePositiveRates(); !s.ok()) return s;
  std::vector<double> quantity(published.size());
  kernels::OverAxeQuantity(published, truth, quotes.columns(), quantity);
  const auto violations =
      std::count_if(quantity.begin(), quantity.end(),
                    [](double q) { return q > 0.0; });
  return static_cast<double>(violations) /
         static_cast<double>(quantity.size());
}

absl::StatusOr<Estimate> MeanWithStdError(std::span<const double> samples) {
  if (samples.empty()) {
    return absl::InvalidArgumentError("no samples");
  }
  const double n = static_cast<double>(samples.size());
  // Shifted by the first sample so that constant input has exactly zero
  // spread.
  const double origin = samples.front();
  double shift = 0.0;
  for (double x : samples) shift += x - origin;
  shift /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - origin - shift) * (x - origin - shift);
  Estimate estimate;
  estimate.mean = origin + shift;
  estimate.n = static_cast<std::int64_t>(samples.size());
  estimate.std_error =
      samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return estimate;
}

absl::StatusOr<Estimate> PnlDifference(std::span<const double> a,
                                       std::span<const double> b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "misaligned P&L series: ", a.size(), " vs ", b.size()));
  }
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return MeanWithStdError(diff);
}

std::int64_t DecileHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

absl::StatusOr<DecileHistogram> MakeDecileHistogram(
    std::span<const double> samples) {
  if (samples.empty()) {
    return absl::InvalidArgumentError("histogram of no samples");
  }
  DecileHistogram histogram;
  for (double x : samples) {
    if (!(x >= 0.0 && x <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample ", x, " outside [0, 1]"));
    }
    // Compare against exact edges so that e.g. 0.3 lands in bin 3.
    int bin = static_cast<int>(x * kDecileBins);
    while (bin > 0 && x < DecileHistogram::BinLow(bin)) --bin;
    while (bin < kDecileBins - 1 && x >= DecileHistogram::BinHigh(bin)) ++bin;
    if (bin >= kDecileBins) bin = kDecileBins - 1;
    ++histogram.counts[bin];
  }
  return histogram;
}

void MetricsReport::Append(MetricsReport other) {
  rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()),
              std::make_move_iterator(other.rows.end()));
  histograms.insert(histograms.end(),
                    std::make_move_iterator(other.histograms.begin()),
                    std::make_move_iterator(other.histograms.end()));
  paths.insert(paths.end(), std::make_move_iterator(other.paths.begin()),
               std::make_move_iterator(other.paths.end()));
}

const MetricRow* MetricsReport::Find(const GridPoint& point,
                                     absl::string_view scenario,
                                     absl::string_view metric, int lag) const {
  for (const MetricRow& row : rows) {
    if (row.point == point && row.scenario == scenario &&
        row.metric == metric && row.lag == lag) {
      return &row;
    }
  }
  return nullptr;
}

absl::Status AddSampleMetric(const GridPoint& point, std::string scenario,
                             std::string metric, int lag,
                             std::span<const double> samples, bool histogram,
                             MetricsReport& report) {
  absl::StatusOr<Estimate> estimate = MeanWithStdError(samples);
  if (!estimate.ok()) return estimate.status();
  if (histogram) {
    absl::StatusOr<DecileHistogram> bins = MakeDecileHistogram(samples);
    if (!bins.ok()) return bins.status();
    for (int b = 0; b < kDecileBins; ++b) {
      report.histograms.push_back({point, scenario, metric, lag, b,
                                   DecileHistogram::BinLow(b),
                                   DecileHistogram::BinHigh(b),
                                   bins->counts[b]});
    }
  }
  report.rows.push_back({point, std::move(scenario), std::move(metric), lag,
                         estimate->mean, estimate->std_error, estimate->n});
  return absl::OkStatus();
}

}  // namespace axedp
