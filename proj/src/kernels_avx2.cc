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

// AVX2 variants. Compiled without -mavx2: each function carries its own
// target attribute so nothing AVX2-encoded leaks into shared inline code.
// Tails shorter than one vector fall through to the scalar reference.

#include "axedp/kernels.h"

#if defined(AXEDP_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <algorithm>
#include <bit>

#define AXEDP_AVX2 __attribute__((target("avx2")))

namespace axedp::kernels::avx2 {

namespace {

AXEDP_AVX2 inline __m256i Load(const std::int64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

AXEDP_AVX2 inline int MaskCount(__m256i mask) {
  return std::popcount(
      static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(mask))));
}

}  // namespace

AXEDP_AVX2 LeakCount CountLeaks(std::span<const std::int64_t> client,
                                std::span<const std::int64_t> published,
                                std::size_t lag) {
  const std::size_t n = std::min(client.size(), published.size());
  LeakCount count;
  if (n <= lag) return count;

  const __m256i zero = _mm256_setzero_si256();
  std::size_t t = lag;
  for (; t + 4 <= n; t += 4) {
    const __m256i dp =
        _mm256_sub_epi64(Load(client.data() + t), Load(client.data() + t - lag));
    const __m256i da = _mm256_sub_epi64(Load(published.data() + t),
                                        Load(published.data() + t - lag));
    const __m256i dp_pos = _mm256_cmpgt_epi64(dp, zero);
    const __m256i dp_neg = _mm256_cmpgt_epi64(zero, dp);
    const __m256i da_pos = _mm256_cmpgt_epi64(da, zero);
    const __m256i da_neg = _mm256_cmpgt_epi64(zero, da);
    const __m256i leak = _mm256_or_si256(_mm256_and_si256(dp_pos, da_neg),
                                         _mm256_and_si256(dp_neg, da_pos));
    count.eligible += MaskCount(_mm256_or_si256(dp_pos, dp_neg));
    count.leaks += MaskCount(leak);
  }
  // Tail: reuse the reference on the remaining window [t - lag, n).
  const LeakCount tail = scalar::CountLeaks(client.subspan(t - lag, n - t + lag),
                                            published.subspan(t - lag, n - t + lag),
                                            lag);
  count.eligible += tail.eligible;
  count.leaks += tail.leaks;
  return count;
}

AXEDP_AVX2 void DiffClip(std::span<const std::int64_t> series, std::int64_t lo,
                         std::int64_t hi, std::span<std::int64_t> out) {
  if (series.size() < 2) return;
  const std::size_t m = series.size() - 1;
  const __m256i vlo = _mm256_set1_epi64x(lo);
  const __m256i vhi = _mm256_set1_epi64x(hi);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256i d = _mm256_sub_epi64(Load(series.data() + i + 1),
                                 Load(series.data() + i));
    d = _mm256_blendv_epi8(d, vlo, _mm256_cmpgt_epi64(vlo, d));
    d = _mm256_blendv_epi8(d, vhi, _mm256_cmpgt_epi64(d, vhi));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), d);
  }
  scalar::DiffClip(series.subspan(i), lo, hi, out.subspan(i));
}

AXEDP_AVX2 void OverAxeQuantity(std::span<const double> published,
                                std::span<const double> truth,
                                QuoteColumns quotes, std::span<double> out) {
  const std::size_t n = published.size();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pub = _mm256_loadu_pd(published.data() + i);
    const __m256d tru = _mm256_loadu_pd(truth.data() + i);
    const __m256d rf = _mm256_loadu_pd(quotes.funding_rate.data() + i);
    const __m256d rb = _mm256_loadu_pd(quotes.borrow_rate.data() + i);
    const __m256d neg_pub = _mm256_xor_pd(pub, sign);

    // max(x, 0) returns +0 for x = -0, matching std::max(0.0, x).
    const __m256d upper = _mm256_mul_pd(tru, _mm256_add_pd(one, _mm256_div_pd(rb, rf)));
    const __m256d q_long =
        _mm256_add_pd(_mm256_max_pd(_mm256_sub_pd(pub, upper), zero),
                      _mm256_max_pd(neg_pub, zero));
    const __m256d lower = _mm256_mul_pd(tru, _mm256_add_pd(one, _mm256_div_pd(rf, rb)));
    const __m256d q_short =
        _mm256_add_pd(_mm256_max_pd(_mm256_add_pd(neg_pub, lower), zero),
                      _mm256_max_pd(pub, zero));

    const __m256d is_long = _mm256_cmp_pd(tru, zero, _CMP_GE_OQ);
    _mm256_storeu_pd(out.data() + i, _mm256_blendv_pd(q_short, q_long, is_long));
  }
  QuoteColumns rest{quotes.price.subspan(std::min(i, quotes.price.size())),
                    quotes.funding_rate.subspan(i), quotes.borrow_rate.subspan(i)};
  scalar::OverAxeQuantity(published.subspan(i), truth.subspan(i), rest,
                          out.subspan(i));
}

namespace {

AXEDP_AVX2 inline __m256d InventoryPnl(__m256d x, __m256d price, __m256d rf,
                                       __m256d rb) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d long_pnl =
      _mm256_xor_pd(_mm256_mul_pd(_mm256_mul_pd(rf, x), price), sign);
  const __m256d short_pnl = _mm256_mul_pd(_mm256_mul_pd(rb, x), price);
  const __m256d is_long = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GE_OQ);
  return _mm256_blendv_pd(short_pnl, long_pnl, is_long);
}

}  // namespace

AXEDP_AVX2 void MarginalPnl(std::span<const double> hit,
                            std::span<const double> truth, QuoteColumns quotes,
                            std::span<double> out) {
  const std::size_t n = hit.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d h = _mm256_loadu_pd(hit.data() + i);
    const __m256d tru = _mm256_loadu_pd(truth.data() + i);
    const __m256d p = _mm256_loadu_pd(quotes.price.data() + i);
    const __m256d rf = _mm256_loadu_pd(quotes.funding_rate.data() + i);
    const __m256d rb = _mm256_loadu_pd(quotes.borrow_rate.data() + i);
    const __m256d with_trade = InventoryPnl(_mm256_sub_pd(h, tru), p, rf, rb);
    const __m256d without = InventoryPnl(_mm256_xor_pd(tru, sign), p, rf, rb);
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(with_trade, without));
  }
  QuoteColumns rest{quotes.price.subspan(i), quotes.funding_rate.subspan(i),
                    quotes.borrow_rate.subspan(i)};
  scalar::MarginalPnl(hit.subspan(i), truth.subspan(i), rest, out.subspan(i));
}

}  // namespace axedp::kernels::avx2

#endif  // AXEDP_HAVE_AVX2_KERNELS
