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

#include <cstdlib>

#include "absl/strings/string_view.h"
#include "axedp/kernels.h"

namespace axedp::kernels {

namespace {

struct KernelTable {
  Isa isa;
  LeakCount (*count_leaks)(std::span<const std::int64_t>,
                           std::span<const std::int64_t>, std::size_t);
  void (*diff_clip)(std::span<const std::int64_t>, std::int64_t, std::int64_t,
                    std::span<std::int64_t>);
  void (*over_axe_quantity)(std::span<const double>, std::span<const double>,
                            QuoteColumns, std::span<double>);
  void (*marginal_pnl)(std::span<const double>, std::span<const double>,
                       QuoteColumns, std::span<double>);
};

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::CountLeaks,
                                   &scalar::DiffClip, &scalar::OverAxeQuantity,
                                   &scalar::MarginalPnl};

#if defined(AXEDP_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::CountLeaks, &avx2::DiffClip,
                                 &avx2::OverAxeQuantity, &avx2::MarginalPnl};
#endif

const KernelTable& SelectTable() {
  const char* forced = std::getenv("AXEDP_SIMD");
  if (forced != nullptr && absl::string_view(forced) == "scalar") {
    return kScalarTable;
  }
#if defined(AXEDP_HAVE_AVX2_KERNELS)
  if (DetectIsa() == Isa::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& Table() {
  static const KernelTable& table = SelectTable();
  return table;
}

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa DetectIsa() {
#if defined(AXEDP_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa ActiveIsa() { return Table().isa; }

LeakCount CountLeaks(std::span<const std::int64_t> client,
                     std::span<const std::int64_t> published, std::size_t lag) {
  return Table().count_leaks(client, published, lag);
}

void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
              std::int64_t hi, std::span<std::int64_t> out) {
  Table().diff_clip(series, lo, hi, out);
}

void OverAxeQuantity(std::span<const double> published,
                     std::span<const double> truth, QuoteColumns quotes,
                     std::span<double> out) {
  Table().over_axe_quantity(published, truth, quotes, out);
}

void MarginalPnl(std::span<const double> hit, std::span<const double> truth,
                 QuoteColumns quotes, std::span<double> out) {
  Table().marginal_pnl(hit, truth, quotes, out);
}

}  // namespace axedp::kernels
