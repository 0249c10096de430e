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

// Independent reference computations used only by tests. Nothing here calls
// into the library under test.

#ifndef AXEDP_TESTS_TESTING_ORACLES_H_
#define AXEDP_TESTS_TESTING_ORACLES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace axedp::test {

// Closed-form CDF of the zero-mean Laplace distribution with scale lambda.
double LaplaceCdf(double x, double lambda);

// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
// `samples` and `cdf`.
double KsStatistic(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Asymptotic critical value of the KS distance at the 1% level.
double KsCritical1Pct(std::size_t n);

// Nearest-rank empirical quantile, q in (0, 1].
double Quantile(std::vector<double> values, double q);

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  // n-1 denominator
};
SampleStats Moments(const std::vector<double>& values);

// Daily carry of x shares at price p: long pays funding, short pays borrow.
double CarryOracle(double x, double price, double funding, double borrow);

// Carry change when a_hit is executed against x = -a_true.
double MarginalPnlOracle(double a_hit, double a_true, double price,
                         double funding, double borrow);

// Exhaustive scan of the marginal P&L over integer hits in [lo, hi].
struct ScanResult {
  std::int64_t argmax = 0;
  double max_value = 0.0;
  std::vector<std::int64_t> positive;  // scan points with P&L > 0
};
ScanResult ScanHits(std::int64_t a_true, std::int64_t lo, std::int64_t hi,
                    double price, double funding, double borrow);

// Hinge distance from the profitability interval, evaluated from its
// definition rather than the library formula.
double OverAxeOracle(double a_pub, double a_true, double funding,
                     double borrow);

struct LeakTally {
  std::int64_t leaks = 0;
  std::int64_t eligible = 0;
};
LeakTally LeakOracle(const std::vector<std::int64_t>& client,
                     const std::vector<std::int64_t>& published, int lag);

// Counts per decile, comparing each sample against the decimal bin edges.
std::array<std::int64_t, 10> DecileOracle(const std::vector<double>& samples);

}  // namespace axedp::test

#endif  // AXEDP_TESTS_TESTING_ORACLES_H_
