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


#include "axedp/finance.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace axedp {
namespace {

MarketQuote Quote(double price, double funding, double borrow) {
  return MarketQuote{price, funding, borrow};
}

TEST(MarketQuoteTest, Validation) {
  EXPECT_TRUE(Quote(10, 0.02, 0.01).Validate().ok());
  EXPECT_TRUE(Quote(10, 0.0, 0.0).Validate().ok());
  EXPECT_FALSE(Quote(0, 0.02, 0.01).Validate().ok());
  EXPECT_FALSE(Quote(-1, 0.02, 0.01).Validate().ok());
  EXPECT_FALSE(Quote(10, -0.02, 0.01).Validate().ok());
  EXPECT_FALSE(Quote(10, 0.0, 0.01).ValidatePositiveRates().ok());
}

TEST(QuoteSeriesTest, ConstantAndAccess) {
  QuoteSeries s = QuoteSeries::Constant(Quote(10, 0.02, 0.01), 3);
  EXPECT_EQ(s.size(), 3u);
  s.push_back(Quote(11, 0.03, 0.02));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s.at(3).price, 11);
  EXPECT_DOUBLE_EQ(s.columns().borrow_rate[3], 0.02);
  EXPECT_TRUE(s.ValidatePositiveRates().ok());
  s.push_back(Quote(11, 0.0, 0.02));
  EXPECT_TRUE(s.Validate().ok());
  EXPECT_FALSE(s.ValidatePositiveRates().ok());
}

TEST(AnnualRateTest, TradingDays) { EXPECT_EQ(kTradingDaysPerYear, 252); }

TEST(InventoryPnlTest, Examples) {
  EXPECT_DOUBLE_EQ(InventoryPnl(100, Quote(10, 0.02, 0.01)), -20.0);
  EXPECT_DOUBLE_EQ(InventoryPnl(-100, Quote(10, 0.02, 0.01)), -10.0);
  EXPECT_DOUBLE_EQ(InventoryPnl(0, Quote(10, 0.02, 0.01)), 0.0);
}

TEST(InventoryPnlTest, NeverPositive) {
  test::ForAll(1000, 61, [](test::Gen& g, int) {
    const MarketQuote q = Quote(g.Real(0.1, 100), g.Real(0, 0.1), g.Real(0, 0.1));
    EXPECT_LE(InventoryPnl(static_cast<double>(g.Int(-1000000, 1000000)), q),
              0.0);
  });
}

TEST(MarginalAxePnlTest, Examples) {
  const MarketQuote q = Quote(10, 0.02, 0.01);
  EXPECT_DOUBLE_EQ(MarginalAxePnl(100, 100, q), 10.0);
  EXPECT_DOUBLE_EQ(MarginalAxePnl(0, 100, q), 0.0);
  EXPECT_NEAR(MarginalAxePnl(150, 100, q), 0.0, 1e-12);
}

TEST(MarginalAxePnlTest, MatchesOracleAndSlopes) {
  test::ForAll(500, 62, [](test::Gen& g, int) {
    const MarketQuote q =
        Quote(g.Real(1, 100), g.Real(1e-5, 0.05), g.Real(1e-5, 0.05));
    const double a_true = static_cast<double>(g.Int(-10000, 10000));
    const double hit = static_cast<double>(g.Int(-30000, 30000));
    const double v = MarginalAxePnl(hit, a_true, q);
    const double want = test::MarginalPnlOracle(hit, a_true, q.price,
                                                q.funding_rate, q.borrow_rate);
    EXPECT_NEAR(v, want, 1e-9 * (1 + std::fabs(want)));
    // Piecewise slopes around the maximum at a_true.
    const double above = MarginalAxePnl(a_true + 1, a_true, q) -
                         MarginalAxePnl(a_true, a_true, q);
    const double below = MarginalAxePnl(a_true, a_true, q) -
                         MarginalAxePnl(a_true - 1, a_true, q);
    EXPECT_NEAR(above, -q.funding_rate * q.price, 1e-9);
    EXPECT_NEAR(below, q.borrow_rate * q.price, 1e-9);
  });
}

TEST(ProfitBoundsTest, Examples) {
  const Interval a = *ProfitBounds(100, Quote(10, 0.02, 0.01));
  EXPECT_DOUBLE_EQ(a.lo, 0);
  EXPECT_DOUBLE_EQ(a.hi, 150);
  const Interval b = *ProfitBounds(-100, Quote(10, 0.02, 0.01));
  EXPECT_DOUBLE_EQ(b.lo, -300);
  EXPECT_DOUBLE_EQ(b.hi, 0);
  const Interval c = *ProfitBounds(0, Quote(10, 0.02, 0.01));
  EXPECT_DOUBLE_EQ(c.lo, 0);
  EXPECT_DOUBLE_EQ(c.hi, 0);
  EXPECT_TRUE(c.Contains(0));
}

TEST(ProfitBoundsTest, ZeroRateIsError) {
  EXPECT_EQ(ProfitBounds(100, Quote(10, 0.0, 0.01)).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(ProfitBounds(-100, Quote(10, 0.02, 0.0)).ok());
  EXPECT_FALSE(OverAxeQuantity(1, 1, Quote(10, 0.0, 0.01)).ok());
  EXPECT_FALSE(OverAxeCost(1, 1, Quote(10, 0.02, 0.0)).ok());
}

TEST(ProfitBoundsTest, BruteForceScan) {
  test::ForAll(50, 63, [](test::Gen& g, int) {
    const MarketQuote q =
        Quote(g.Real(1, 50), g.Real(1e-4, 0.05), g.Real(1e-4, 0.05));
    const std::int64_t a_true = g.Int(-60, 60);
    const std::int64_t span = 3 * std::max<std::int64_t>(1, std::llabs(a_true));
    const test::ScanResult scan = test::ScanHits(
        a_true, -span, span, q.price, q.funding_rate, q.borrow_rate);
    EXPECT_EQ(scan.argmax, a_true);
    const Interval b = *ProfitBounds(static_cast<double>(a_true), q);
    const double scale = std::max(1.0, std::fabs(scan.max_value));
    for (std::int64_t h = -span; h <= span; ++h) {
      const double x = static_cast<double>(h);
      if (std::fabs(x - b.lo) < 1e-6 || std::fabs(x - b.hi) < 1e-6) continue;
      const bool inside = b.lo < x && x < b.hi;
      const bool positive = MarginalAxePnl(x, static_cast<double>(a_true), q) > 0;
      EXPECT_EQ(inside, positive) << "hit " << h << " a_true " << a_true;
    }
    EXPECT_LE(std::fabs(MarginalAxePnl(b.lo, static_cast<double>(a_true), q)),
              1e-9 * scale);
    EXPECT_LE(std::fabs(MarginalAxePnl(b.hi, static_cast<double>(a_true), q)),
              1e-9 * scale);
  });
}

TEST(OverAxeTest, Examples) {
  const MarketQuote q = Quote(10, 0.02, 0.01);
  EXPECT_DOUBLE_EQ(*OverAxeQuantity(120, 100, q), 0.0);
  EXPECT_DOUBLE_EQ(*OverAxeQuantity(180, 100, q), 30.0);
  EXPECT_DOUBLE_EQ(*OverAxeQuantity(-20, 100, q), 20.0);
  EXPECT_DOUBLE_EQ(*OverAxeQuantity(-400, -100, q), 100.0);
  EXPECT_DOUBLE_EQ(*OverAxeQuantity(5, -100, q), 5.0);
}

TEST(OverAxeTest, CostExamples) {
  const MarketQuote q = Quote(10, 0.02, 0.01);
  EXPECT_DOUBLE_EQ(OverAxeCostFromQuantity(0, 100, q), 0.0);
  EXPECT_DOUBLE_EQ(OverAxeCostFromQuantity(30, 100, q), 0.3);
  EXPECT_DOUBLE_EQ(OverAxeCostFromQuantity(20, -100, q), 0.4);
  EXPECT_DOUBLE_EQ(*OverAxeCost(180, 100, q), 0.3);
}

TEST(OverAxeTest, ZeroExactlyInsideBounds) {
  test::ForAll(1000, 64, [](test::Gen& g, int) {
    const MarketQuote q =
        Quote(g.Real(1, 50), g.Real(1e-4, 0.05), g.Real(1e-4, 0.05));
    const double a_true = static_cast<double>(g.Int(-5000, 5000));
    const double a_pub = static_cast<double>(g.Int(-20000, 20000));
    const double oa = *OverAxeQuantity(a_pub, a_true, q);
    EXPECT_GE(oa, 0.0);
    EXPECT_EQ(oa == 0.0, ProfitBounds(a_true, q)->Contains(a_pub));
    const double want =
        test::OverAxeOracle(a_pub, a_true, q.funding_rate, q.borrow_rate);
    EXPECT_NEAR(oa, want, 1e-9 * (1 + want));
  });
}

TEST(HitLegalityTest, SignAndMagnitude) {
  EXPECT_TRUE(IsLegalHit(0, 0));
  EXPECT_TRUE(IsLegalHit(0, 50));
  EXPECT_TRUE(IsLegalHit(5, 50));
  EXPECT_TRUE(IsLegalHit(50, 50));
  EXPECT_TRUE(IsLegalHit(-5, -50));
  EXPECT_FALSE(IsLegalHit(51, 50));
  EXPECT_FALSE(IsLegalHit(-5, 50));
  EXPECT_FALSE(IsLegalHit(1, 0));
}

}  // namespace
}  // namespace axedp
