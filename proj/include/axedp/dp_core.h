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

#ifndef AXEDP_DP_CORE_H_
#define AXEDP_DP_CORE_H_

#include <cstdint>
#include <random>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace axedp {

// Quantities are whole shares.
using Shares = std::int64_t;

// Clipping interval [lo, hi] applied to daily changes. Its width is the
// global sensitivity of a partial-sum query over clipped changes.
class ClipBounds {
 public:
  ClipBounds() = default;  // [0, 0]
  static absl::StatusOr<ClipBounds> Create(Shares lo, Shares hi);
  // [-adtv, +adtv]; adtv must be non-negative.
  static absl::StatusOr<ClipBounds> Symmetric(Shares adtv);

  Shares lo() const { return lo_; }
  Shares hi() const { return hi_; }

  friend bool operator==(const ClipBounds&, const ClipBounds&) = default;

 private:
  ClipBounds(Shares lo, Shares hi) : lo_(lo), hi_(hi) {}
  Shares lo_ = 0;
  Shares hi_ = 0;
};

// Scale of a zero-mean Laplace distribution. Always strictly positive.
class NoiseScale {
 public:
  static absl::StatusOr<NoiseScale> Create(double lambda);

  double lambda() const { return lambda_; }

 private:
  explicit NoiseScale(double lambda) : lambda_(lambda) {}
  double lambda_;
};

// Deterministic random source keyed by (seed, stream_id). Two handles with
// the same key produce the same sequence on every platform: the engine is
// std::mt19937_64 seeded through std::seed_seq, both fully specified by the
// standard, and only raw engine output is consumed.
//
// Single owner; never share one handle between concurrent tasks.
class RngHandle {
 public:
  RngHandle(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform draw strictly inside (0, 1), 53 bits of resolution.
  double UniformOpen();

  std::uint64_t NextBits() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Stream id for one (asset, path) unit of work. Independent of the order in
// which units are scheduled.
std::uint64_t DeriveStreamId(std::uint64_t master_seed,
                             std::uint64_t asset_index,
                             std::uint64_t path_index);

// Laplace quantile function for u in (0, 1).
double LaplaceInverseCdf(double u, double lambda);

// One draw from Lap(lambda) by inverse-CDF transform of rng.UniformOpen().
// Consumes exactly one engine output.
double SampleLaplace(NoiseScale scale, RngHandle& rng);

Shares Clip(Shares value, ClipBounds bounds);

// hi - lo.
Shares FixedSensitivity(ClipBounds bounds);

// Delta / epsilon. Fails when epsilon <= 0 or the bounds are degenerate.
absl::StatusOr<NoiseScale> FixedScale(ClipBounds bounds, double epsilon);

// (max(window) - min(window)) / epsilon over an observed window of clipped
// values. A zero range would publish noiseless values, so it falls back to
// FixedScale(bounds, epsilon).
absl::StatusOr<NoiseScale> AdaptiveScale(std::span<const Shares> window,
                                         double epsilon, ClipBounds bounds);

// High-probability bound on |sum_i Lap(b_i)|:
//   c * sqrt(sum_i b_i^2) * ln(1/delta).
// Used as a test oracle, never as a published quantity.
inline constexpr double kLaplaceSumTailConstant = 4.0;
absl::StatusOr<double> LaplaceSumTail(
    std::span<const double> scales, double delta,
    double constant = kLaplaceSumTailConstant);

}  // namespace axedp

#endif  // AXEDP_DP_CORE_H_
