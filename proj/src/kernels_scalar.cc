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

#include <algorithm>

#include "axedp/kernels.h"

namespace axedp::kernels::scalar {

LeakCount CountLeaks(std::span<const std::int64_t> client,
                     std::span<const std::int64_t> published,
                     std::size_t lag) {
  LeakCount count;
  const std::size_t n = std::min(client.size(), published.size());
  for (std::size_t t = lag; t < n; ++t) {
    const std::int64_t dp = client[t] - client[t - lag];
    const std::int64_t da = published[t] - published[t - lag];
    if (dp == 0) continue;
    ++count.eligible;
    if ((dp > 0 && da < 0) || (dp < 0 && da > 0)) ++count.leaks;
  }
  return count;
}

void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
              std::int64_t hi, std::span<std::int64_t> out) {
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    out[i] = std::clamp(series[i + 1] - series[i], lo, hi);
  }
}

// The operation order below is the contract the AVX2 variant reproduces.

void OverAxeQuantity(std::span<const double> published,
                     std::span<const double> truth, QuoteColumns quotes,
                     std::span<double> out) {
  for (std::size_t i = 0; i < published.size(); ++i) {
    const double pub = published[i];
    const double tru = truth[i];
    const double rf = quotes.funding_rate[i];
    const double rb = quotes.borrow_rate[i];
    double q;
    if (tru >= 0.0) {
      const double upper = tru * (1.0 + rb / rf);
      q = std::max(0.0, pub - upper) + std::max(0.0, -pub);
    } else {
      const double lower = tru * (1.0 + rf / rb);
      q = std::max(0.0, -pub + lower) + std::max(0.0, pub);
    }
    out[i] = q;
  }
}

namespace {

inline double InventoryPnl(double x, double price, double rf, double rb) {
  return x >= 0.0 ? -(rf * x * price) : rb * x * price;
}

}  // namespace

void MarginalPnl(std::span<const double> hit, std::span<const double> truth,
                 QuoteColumns quotes, std::span<double> out) {
  for (std::size_t i = 0; i < hit.size(); ++i) {
    const double p = quotes.price[i];
    const double rf = quotes.funding_rate[i];
    const double rb = quotes.borrow_rate[i];
    out[i] = InventoryPnl(hit[i] - truth[i], p, rf, rb) -
             InventoryPnl(-truth[i], p, rf, rb);
  }
}

}  // namespace axedp::kernels::scalar
