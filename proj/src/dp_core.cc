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

#include "axedp/dp_core.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace axedp {

absl::StatusOr<ClipBounds> ClipBounds::Create(Shares lo, Shares hi) {
  if (lo > hi) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip bounds require lo <= hi, got [", lo, ", ", hi, "]"));
  }
  return ClipBounds(lo, hi);
}

absl::StatusOr<ClipBounds> ClipBounds::Symmetric(Shares adtv) {
  if (adtv < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("ADTV must be non-negative, got ", adtv));
  }
  return ClipBounds(-adtv, adtv);
}

absl::StatusOr<NoiseScale> NoiseScale::Create(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise scale must be positive and finite, got ", lambda));
  }
  return NoiseScale(lambda);
}

RngHandle::RngHandle(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngHandle::UniformOpen() {
  // Midpoint of one of 2^53 equal cells: never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveStreamId(std::uint64_t master_seed,
                             std::uint64_t asset_index,
                             std::uint64_t path_index) {
  std::uint64_t h = MixBits(master_seed);
  h = MixBits(h ^ asset_index);
  return MixBits(h ^ (path_index * 0xd1b54a32d192ed03ULL));
}

double LaplaceInverseCdf(double u, double lambda) {
  const double centered = u - 0.5;
  const double magnitude = -lambda * std::log1p(-2.0 * std::fabs(centered));
  return centered < 0.0 ? -magnitude : magnitude;
}

double SampleLaplace(NoiseScale scale, RngHandle& rng) {
  return LaplaceInverseCdf(rng.UniformOpen(), scale.lambda());
}

Shares Clip(Shares value, ClipBounds bounds) {
  return std::clamp(value, bounds.lo(), bounds.hi());
}

Shares FixedSensitivity(ClipBounds bounds) { return bounds.hi() - bounds.lo(); }

absl::StatusOr<NoiseScale> FixedScale(ClipBounds bounds, double epsilon) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  const Shares sensitivity = FixedSensitivity(bounds);
  if (sensitivity == 0) {
    return absl::InvalidArgumentError(
        "degenerate clip bounds give zero sensitivity; noise would vanish");
  }
  return NoiseScale::Create(static_cast<double>(sensitivity) / epsilon);
}

absl::StatusOr<NoiseScale> AdaptiveScale(std::span<const Shares> window,
                                         double epsilon, ClipBounds bounds) {
  if (window.empty()) {
    return absl::InvalidArgumentError("adaptive scale needs a non-empty window");
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  const auto [min_it, max_it] = std::minmax_element(window.begin(), window.end());
  const Shares range = *max_it - *min_it;
  if (range == 0) return FixedScale(bounds, epsilon);
  return NoiseScale::Create(static_cast<double>(range) / epsilon);
}

absl::StatusOr<double> LaplaceSumTail(std::span<const double> scales,
                                      double delta, double constant) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  double sum_sq = 0.0;
  for (double b : scales) {
    if (!(b > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Laplace scales must be positive, got ", b));
    }
    sum_sq += b * b;
  }
  return constant * std::sqrt(sum_sq) * std::log(1.0 / delta);
}

}  // namespace axedp
