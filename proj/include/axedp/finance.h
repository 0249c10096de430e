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

// Inventory carry P&L of an axe trade.
//
// Sign conventions: x is the bank's net inventory (long > 0). The true axe is
// a_true = -x, so a positive axe advertises shares the bank wants to sell.
// Rates are per day. Quantities are passed as double so the same functions
// evaluate counterfactual, non-integer quantities (interval endpoints).
// Hit legality (sign and size against the published axe) is enforced by the
// simulator, not here.

#ifndef AXEDP_FINANCE_H_
#define AXEDP_FINANCE_H_

#include <cstddef>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "axedp/kernels.h"

namespace axedp {

// Conversion for annualized inputs.
inline constexpr double kTradingDaysPerYear = 252.0;

struct MarketQuote {
  double price = 0.0;         // currency per share, > 0
  double funding_rate = 0.0;  // per day, >= 0
  double borrow_rate = 0.0;   // per day, >= 0

  absl::Status Validate() const;
  // Profitability bounds and over-axe metrics divide by both rates.
  absl::Status ValidatePositiveRates() const;
};

// Daily quotes for one asset, stored column-wise.
struct QuoteSeries {
  std::vector<double> price;
  std::vector<double> funding_rate;
  std::vector<double> borrow_rate;

  static QuoteSeries Constant(const MarketQuote& quote, std::size_t days);

  std::size_t size() const { return price.size(); }
  MarketQuote at(std::size_t day) const {
    return {price[day], funding_rate[day], borrow_rate[day]};
  }
  void push_back(const MarketQuote& quote);
  kernels::QuoteColumns columns() const {
    return {price, funding_rate, borrow_rate};
  }
  absl::Status Validate() const;
  absl::Status ValidatePositiveRates() const;
};

struct AxeTriple {
  double a_true = 0.0;
  double a_pub = 0.0;
  double a_hit = 0.0;
};

// True when `hit` is an admissible client execution against `published`:
// same sign (or no trade) and no larger in magnitude.
bool IsLegalHit(double hit, double published);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool Contains(double v) const { return lo <= v && v <= hi; }
};

// Daily carry of holding x shares: -r_F x P when long, r_B x P when short.
// Never positive.
double InventoryPnl(double x, const MarketQuote& quote);

// Carry with the trade minus carry without it, x = -a_true.
double MarginalAxePnl(double a_hit, double a_true, const MarketQuote& quote);

// Range of executed quantities with non-negative marginal P&L:
//   a_true >= 0: [0, a_true (1 + r_B/r_F)]
//   a_true <  0: [a_true (1 + r_F/r_B), 0]
absl::StatusOr<Interval> ProfitBounds(double a_true, const MarketQuote& quote);

// Hinge distance of a_pub from ProfitBounds(a_true); zero iff inside.
absl::StatusOr<double> OverAxeQuantity(double a_pub, double a_true,
                                       const MarketQuote& quote);

// Worst-case daily cost if the over-axed quantity were fully hit.
absl::StatusOr<double> OverAxeCost(double a_pub, double a_true,
                                   const MarketQuote& quote);
// Same, from a precomputed over-axe quantity.
double OverAxeCostFromQuantity(double quantity, double a_true,
                               const MarketQuote& quote);

}  // namespace axedp

#endif  // AXEDP_FINANCE_H_
