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

#include "absl/strings/str_cat.h"

namespace axedp {

absl::Status MarketQuote::Validate() const {
  if (!(price > 0.0) || !std::isfinite(price)) {
    return absl::InvalidArgumentError(
        absl::StrCat("price must be positive, got ", price));
  }
  if (!(funding_rate >= 0.0) || !(borrow_rate >= 0.0) ||
      !std::isfinite(funding_rate) || !std::isfinite(borrow_rate)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rates must be non-negative, got funding=", funding_rate,
                     " borrow=", borrow_rate));
  }
  return absl::OkStatus();
}

absl::Status MarketQuote::ValidatePositiveRates() const {
  if (absl::Status s = Validate(); !s.ok()) return s;
  if (!(funding_rate > 0.0) || !(borrow_rate > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("profitability bounds need positive rates, got funding=",
                     funding_rate, " borrow=", borrow_rate));
  }
  return absl::OkStatus();
}

QuoteSeries QuoteSeries::Constant(const MarketQuote& quote, std::size_t days) {
  QuoteSeries series;
  series.price.assign(days, quote.price);
  series.funding_rate.assign(days, quote.funding_rate);
  series.borrow_rate.assign(days, quote.borrow_rate);
  return series;
}

void QuoteSeries::push_back(const MarketQuote& quote) {
  price.push_back(quote.price);
  funding_rate.push_back(quote.funding_rate);
  borrow_rate.push_back(quote.borrow_rate);
}

absl::Status QuoteSeries::Validate() const {
  if (funding_rate.size() != price.size() ||
      borrow_rate.size() != price.size()) {
    return absl::InvalidArgumentError("quote columns have different lengths");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (absl::Status s = at(i).Validate(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("day ", i, ": ", s.message()));
    }
  }
  return absl::OkStatus();
}

absl::Status QuoteSeries::ValidatePositiveRates() const {
  if (absl::Status s = Validate(); !s.ok()) return s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (absl::Status s = at(i).ValidatePositiveRates(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("day ", i, ": ", s.message()));
    }
  }
  return absl::OkStatus();
}

bool IsLegalHit(double hit, double published) {
  if (hit == 0.0) return true;
  if ((hit > 0.0) != (published > 0.0) || published == 0.0) return false;
  return std::fabs(hit) <= std::fabs(published);
}

double InventoryPnl(double x, const MarketQuote& quote) {
  return x >= 0.0 ? -(quote.funding_rate * x * quote.price)
                  : quote.borrow_rate * x * quote.price;
}

double MarginalAxePnl(double a_hit, double a_true, const MarketQuote& quote) {
  return InventoryPnl(a_hit - a_true, quote) - InventoryPnl(-a_true, quote);
}

absl::StatusOr<Interval> ProfitBounds(double a_true, const MarketQuote& quote) {
  if (absl::Status s = quote.ValidatePositiveRates(); !s.ok()) return s;
  if (a_true >= 0.0) {
    return Interval{0.0,
                    a_true * (1.0 + quote.borrow_rate / quote.funding_rate)};
  }
  return Interval{a_true * (1.0 + quote.funding_rate / quote.borrow_rate), 0.0};
}

absl::StatusOr<double> OverAxeQuantity(double a_pub, double a_true,
                                       const MarketQuote& quote) {
  absl::StatusOr<Interval> bounds = ProfitBounds(a_true, quote);
  if (!bounds.ok()) return bounds.status();
  if (a_true >= 0.0) {
    return std::max(0.0, a_pub - bounds->hi) + std::max(0.0, -a_pub);
  }
  return std::max(0.0, -a_pub + bounds->lo) + std::max(0.0, a_pub);
}

double OverAxeCostFromQuantity(double quantity, double a_true,
                               const MarketQuote& quote) {
  return a_true >= 0.0 ? quantity * quote.borrow_rate
                       : quantity * quote.funding_rate;
}

absl::StatusOr<double> OverAxeCost(double a_pub, double a_true,
                                   const MarketQuote& quote) {
  absl::StatusOr<double> quantity = OverAxeQuantity(a_pub, a_true, quote);
  if (!quantity.ok()) return quantity.status();
  return OverAxeCostFromQuantity(*quantity, a_true, quote);
}

}  // namespace axedp
