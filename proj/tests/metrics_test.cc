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

#include <array>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace axedp {
namespace {

using Series = std::vector<Shares>;

TEST(LagsTest, Validation) {
  const std::vector<int> ok = {1, 5, 10};
  EXPECT_TRUE(ValidateLags(ok, 11).ok());
  EXPECT_FALSE(ValidateLags(ok, 10).ok());
  const std::vector<int> zero = {0};
  EXPECT_FALSE(ValidateLags(zero, 5).ok());
  EXPECT_EQ(DefaultLags(), (std::vector<int>{1, 5, 10}));
}

TEST(LeakageTest, Examples) {
  const Series p = {1, 2, 3, 4};
  const Series neg = {-1, -2, -3, -4};
  EXPECT_DOUBLE_EQ(*LeakageProbability(p, neg, 1), 1.0);
  const Series flat = {7, 7, 7, 7};
  EXPECT_DOUBLE_EQ(*LeakageProbability(p, flat, 1), 0.0);
  const Series zigzag = {1, 2, 1, 2};
  const Series pub = {5, 4, 5, 4};
  EXPECT_DOUBLE_EQ(*LeakageProbability(zigzag, pub, 1), 1.0);
}

TEST(LeakageTest, NoClientMoveGivesZero) {
  const Series p = {3, 3, 3};
  const Series pub = {1, 2, 3};
  EXPECT_DOUBLE_EQ(*LeakageProbability(p, pub, 1), 0.0);
  const kernels::LeakCount c = *CountLeakage(p, pub, 1);
  EXPECT_EQ(c.eligible, 0);
  EXPECT_DOUBLE_EQ(LeakRatio(c), 0.0);
}

TEST(LeakageTest, Errors) {
  const Series a = {1, 2, 3};
  const Series b = {1, 2};
  EXPECT_EQ(LeakageProbability(a, b, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(LeakageProbability(a, a, 3).ok());
  EXPECT_FALSE(LeakageProbability(a, a, 0).ok());
}

TEST(LeakageTest, MatchesOracleAndInvariances) {
  test::ForAll(300, 71, [](test::Gen& g, int) {
    const std::size_t n = static_cast<std::size_t>(g.Int(2, 120));
    const Series client = g.Levels(n, 5, 100);
    const Series pub = g.Levels(n, 5, 100);
    const int lag = static_cast<int>(g.Int(1, static_cast<std::int64_t>(n) - 1));
    const double lp = *LeakageProbability(client, pub, lag);
    const test::LeakTally t = test::LeakOracle(client, pub, lag);
    const double want = t.eligible == 0 ? 0.0
                                        : static_cast<double>(t.leaks) /
                                              static_cast<double>(t.eligible);
    EXPECT_DOUBLE_EQ(lp, want);
    EXPECT_GE(lp, 0.0);
    EXPECT_LE(lp, 1.0);

    const Shares shift = g.Int(-1000, 1000);
    const Shares scale = g.Int(1, 50);
    Series client2 = client;
    Series pub2 = pub;
    for (Shares& v : client2) v = v * scale + shift;
    for (Shares& v : pub2) v = v * (scale + 1) - shift;
    EXPECT_DOUBLE_EQ(*LeakageProbability(client2, pub2, lag), lp);
  });
}

TEST(LeakageTest, MirroredClientLeaksFullyAtEveryLag) {
  test::ForAll(50, 72, [](test::Gen& g, int) {
    Series client = {g.Int(1, 100)};
    for (int i = 1; i < 60; ++i) client.push_back(client.back() + g.Int(1, 9));
    Series pub;
    for (Shares v : client) pub.push_back(-v);
    for (int lag : DefaultLags()) {
      EXPECT_DOUBLE_EQ(*LeakageProbability(client, pub, lag), 1.0);
    }
  });
}

TEST(OverAxeFrequencyTest, Examples) {
  const MarketQuote q{10, 0.02, 0.01};
  const QuoteSeries quotes = QuoteSeries::Constant(q, 3);
  const std::vector<double> truth = {100, 100, -100};
  EXPECT_DOUBLE_EQ(*OverAxeFrequency(truth, truth, quotes), 0.0);
  const std::vector<double> bad = {-5, 400, 50};
  EXPECT_DOUBLE_EQ(*OverAxeFrequency(bad, truth, quotes), 1.0);
  const std::vector<double> mixed = {100, 180, -50};
  EXPECT_DOUBLE_EQ(*OverAxeFrequency(mixed, truth, quotes), 1.0 / 3.0);
}

TEST(OverAxeFrequencyTest, Errors) {
  const QuoteSeries quotes = QuoteSeries::Constant({10, 0.02, 0.01}, 3);
  const std::vector<double> three = {1, 2, 3};
  const std::vector<double> two = {1, 2};
  EXPECT_EQ(OverAxeFrequency(two, three, quotes).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(OverAxeFrequency(two, two, quotes).ok());
  const QuoteSeries zero = QuoteSeries::Constant({10, 0.0, 0.01}, 3);
  EXPECT_FALSE(OverAxeFrequency(three, three, zero).ok());
}

TEST(OverAxeFrequencyTest, TruthIsNeverOverAxed) {
  test::ForAll(100, 73, [](test::Gen& g, int) {
    const std::size_t n = static_cast<std::size_t>(g.Int(1, 50));
    QuoteSeries quotes;
    std::vector<double> truth;
    for (std::size_t i = 0; i < n; ++i) {
      quotes.push_back({g.Real(1, 100), g.Real(1e-5, 0.01), g.Real(1e-5, 0.01)});
      truth.push_back(static_cast<double>(g.Int(-1000, 1000)));
    }
    EXPECT_DOUBLE_EQ(*OverAxeFrequency(truth, truth, quotes), 0.0);
  });
}

TEST(EstimateTest, MeanAndStandardError) {
  const std::vector<double> x = {1, 2, 3, 4};
  const Estimate e = *MeanWithStdError(x);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(e.n, 4);
  const std::vector<double> one = {7};
  EXPECT_DOUBLE_EQ(MeanWithStdError(one)->std_error, 0.0);
  EXPECT_FALSE(MeanWithStdError({}).ok());
}

TEST(PnlDifferenceTest, Examples) {
  const std::vector<double> a = {1.5, -2.0, 3.25};
  const Estimate same = *PnlDifference(a, a);
  EXPECT_DOUBLE_EQ(same.mean, 0.0);
  EXPECT_DOUBLE_EQ(same.std_error, 0.0);

  std::vector<double> shifted = a;
  for (double& v : shifted) v += 4.4;
  EXPECT_NEAR(PnlDifference(a, shifted)->mean, -4.4, 1e-12);

  // Two paths: differences 3 and -1.
  const std::vector<double> x = {5, 1};
  const std::vector<double> y = {2, 2};
  const Estimate d = *PnlDifference(x, y);
  EXPECT_DOUBLE_EQ(d.mean, 1.0);
  EXPECT_DOUBLE_EQ(d.std_error, 2.0);
  EXPECT_EQ(d.n, 2);
}

TEST(PnlDifferenceTest, MisalignedIsError) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {1};
  EXPECT_EQ(PnlDifference(a, b).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(PnlDifferenceTest, Antisymmetric) {
  test::ForAll(100, 74, [](test::Gen& g, int) {
    const std::size_t n = static_cast<std::size_t>(g.Int(1, 40));
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g.Real(-100, 100);
      b[i] = g.Real(-100, 100);
    }
    const Estimate ab = *PnlDifference(a, b);
    const Estimate ba = *PnlDifference(b, a);
    EXPECT_NEAR(ab.mean, -ba.mean, 1e-12);
    EXPECT_NEAR(ab.std_error, ba.std_error, 1e-12);
  });
}

TEST(DecileHistogramTest, Examples) {
  const std::vector<double> high(5, 0.95);
  const DecileHistogram h = *MakeDecileHistogram(high);
  EXPECT_EQ(h.counts[9], 5);
  EXPECT_EQ(h.total(), 5);

  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.05 + 0.1 * i);
  for (std::int64_t c : MakeDecileHistogram(grid)->counts) EXPECT_EQ(c, 1);

  const std::vector<double> one = {1.0};
  EXPECT_EQ(MakeDecileHistogram(one)->counts[9], 1);
  const std::vector<double> zero = {0.0};
  EXPECT_EQ(MakeDecileHistogram(zero)->counts[0], 1);
  EXPECT_DOUBLE_EQ(DecileHistogram::BinLow(3), 0.3);
  EXPECT_DOUBLE_EQ(DecileHistogram::BinHigh(9), 1.0);
}

TEST(DecileHistogramTest, Errors) {
  EXPECT_EQ(MakeDecileHistogram({}).status().code(),
            absl::StatusCode::kInvalidArgument);
  const std::vector<double> above = {1.01};
  EXPECT_FALSE(MakeDecileHistogram(above).ok());
  const std::vector<double> below = {-0.01};
  EXPECT_FALSE(MakeDecileHistogram(below).ok());
}

TEST(DecileHistogramTest, MatchesOracleAndSumsToCount) {
  test::ForAll(200, 75, [](test::Gen& g, int) {
    const std::vector<double> s =
        g.Probabilities(static_cast<std::size_t>(g.Int(1, 300)));
    const DecileHistogram h = *MakeDecileHistogram(s);
    EXPECT_EQ(h.total(), static_cast<std::int64_t>(s.size()));
    const std::array<std::int64_t, 10> want = test::DecileOracle(s);
    for (int b = 0; b < kDecileBins; ++b) EXPECT_EQ(h.counts[b], want[b]);
  });
}

TEST(MetricsReportTest, AddFindAppend) {
  MetricsReport report;
  const GridPoint point{0.3, 30, 20};
  const std::vector<double> lp = {0.1, 0.5, 0.95};
  ASSERT_TRUE(AddSampleMetric(point, "obf_incl", "lp", 5, lp, true, report).ok());
  const std::vector<double> pnl = {1.0, 3.0};
  ASSERT_TRUE(AddSampleMetric(point, "obf_incl", "pnl", 0, pnl, false, report).ok());
  ASSERT_EQ(report.rows.size(), 2u);
  ASSERT_EQ(report.histograms.size(), 10u);
  std::int64_t total = 0;
  for (const HistogramRow& h : report.histograms) total += h.count;
  EXPECT_EQ(total, 3);

  const MetricRow* row = report.Find(point, "obf_incl", "pnl");
  ASSERT_NE(row, nullptr);
  EXPECT_DOUBLE_EQ(row->mean, 2.0);
  EXPECT_EQ(row->n_paths, 2);
  EXPECT_EQ(report.Find(point, "obf_incl", "lp", 1), nullptr);
  EXPECT_NE(report.Find(point, "obf_incl", "lp", 5), nullptr);
  EXPECT_EQ(report.Find({0.5, 30, 20}, "obf_incl", "pnl"), nullptr);

  MetricsReport other;
  ASSERT_TRUE(AddSampleMetric({0.5, 30, 20}, "x", "pnl", 0, pnl, false, other).ok());
  report.Append(std::move(other));
  EXPECT_EQ(report.rows.size(), 3u);
  EXPECT_NE(report.Find({0.5, 30, 20}, "x", "pnl"), nullptr);
}

TEST(MetricsReportTest, HistogramRejectsOutOfRangeSamples) {
  MetricsReport report;
  const std::vector<double> bad = {2.0};
  EXPECT_FALSE(AddSampleMetric({}, "s", "lp", 1, bad, true, report).ok());
  EXPECT_TRUE(report.rows.empty());
}

}  // namespace
}  // namespace axedp
