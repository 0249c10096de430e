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

// Data-parallel inner loops over per-day series.
//
// Every kernel has a scalar reference in `scalar::` and, on x86-64, an AVX2
// variant in `avx2::`. Variants are bit-for-bit equivalent: the AVX2 code
// performs the same IEEE operations in the same order as the reference, and
// the build disables FMA contraction. The unqualified entry points dispatch
// once per process on CPUID; set AXEDP_SIMD=scalar to force the reference.
//
// Output spans must be at least as long as the inputs. Inputs are not
// validated here; callers own the contract.

#ifndef AXEDP_KERNELS_H_
#define AXEDP_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace axedp::kernels {

enum class Isa { kScalar, kAvx2 };

const char* IsaName(Isa isa);

// Best ISA this CPU supports, ignoring AXEDP_SIMD.
Isa DetectIsa();

// ISA the dispatching entry points use.
Isa ActiveIsa();

struct LeakCount {
  std::int64_t leaks = 0;     // lagged moves in opposite directions
  std::int64_t eligible = 0;  // lagged moves where the client changed

  friend bool operator==(const LeakCount&, const LeakCount&) = default;
};

// Per-day rates in structure-of-arrays form.
struct QuoteColumns {
  std::span<const double> price;
  std::span<const double> funding_rate;
  std::span<const double> borrow_rate;
};

namespace scalar {

// Over t in [lag, n): counts days where client[t] != client[t-lag], and of
// those, days where the published change has the opposite strict sign.
LeakCount CountLeaks(std::span<const std::int64_t> client,
                     std::span<const std::int64_t> published,
                     std::size_t lag);

// out[i] = clamp(series[i+1] - series[i], lo, hi), i in [0, n-1).
void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
              std::int64_t hi, std::span<std::int64_t> out);

// Hinge distance of each published quantity from its profitability interval.
// Rates must be positive.
void OverAxeQuantity(std::span<const double> published,
                     std::span<const double> truth, QuoteColumns quotes,
                     std::span<double> out);

// Marginal inventory P&L of executing hit[i] against true axe truth[i].
void MarginalPnl(std::span<const double> hit, std::span<const double> truth,
                 QuoteColumns quotes, std::span<double> out);

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define AXEDP_HAVE_AVX2_KERNELS 1
namespace avx2 {

LeakCount CountLeaks(std::span<const std::int64_t> client,
                     std::span<const std::int64_t> published,
                     std::size_t lag);
void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
              std::int64_t hi, std::span<std::int64_t> out);
void OverAxeQuantity(std::span<const double> published,
                     std::span<const double> truth, QuoteColumns quotes,
                     std::span<double> out);
void MarginalPnl(std::span<const double> hit, std::span<const double> truth,
                 QuoteColumns quotes, std::span<double> out);

}  // namespace avx2
#endif

LeakCount CountLeaks(std::span<const std::int64_t> client,
                     std::span<const std::int64_t> published,
                     std::size_t lag);
void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
              std::int64_t hi, std::span<std::int64_t> out);
void OverAxeQuantity(std::span<const double> published,
                     std::span<const double> truth, QuoteColumns quotes,
                     std::span<double> out);
void MarginalPnl(std::span<const double> hit, std::span<const double> truth,
                 QuoteColumns quotes, std::span<double> out);

}  // namespace axedp::kernels

#endif  // AXEDP_KERNELS_H_
