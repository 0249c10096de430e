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

// Continual-observation publishers for a running sum of daily changes.
//
// Every publisher is anchored at the unperturbed day-0 level and consumes one
// clipped change per day, split into its non-negative and non-positive parts.
// The value it publishes on day t approximates
//
//   level(t) = level(0) + sum_{i<=t} (pos(i) + neg(i)).
//
// Mechanisms differ in which noisy partial sums they release:
//
//   naive   level(t) + fresh Lap(D/eps) every day.
//   simple  each change carries its own noise; noise accumulates.
//   window  days are grouped in buckets of B days. Inside the open bucket
//           each day is released with its own noise; on the last day of a
//           bucket the whole bucket is released as one noisy sum and the
//           per-day releases are retired. A day enters at most two noisy
//           partial sums, and day t reads d(t) + c(t) of them.
//   binary  dyadic tree over the period: day t closes the node at level
//           ctz(t) and the published value reads popcount(t) nodes, each
//           carrying Lap(L * D/eps) with L = bit_width(T) tree levels.
//
// Window and binary state resets every `horizon` days. At a reset the last
// published (unrounded) value becomes the new anchor, so noise already
// released stays in the published level and nothing true is re-released.
//
// Published values are rounded to whole shares on emission only.

#ifndef AXEDP_MECHANISMS_H_
#define AXEDP_MECHANISMS_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "axedp/dp_core.h"

namespace axedp {

enum class Mechanism { kNaive, kSimple, kWindow, kBinary };
enum class SensitivityMode { kFixed, kAdaptive };

absl::string_view MechanismName(Mechanism mechanism);
absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name);
absl::string_view SensitivityModeName(SensitivityMode mode);
absl::StatusOr<SensitivityMode> ParseSensitivityMode(absl::string_view name);

struct DpParams {
  double epsilon = 0.3;
  int horizon = 30;  // reset period T, days
  int bucket = 20;   // window bucket B, days
  ClipBounds clip;
  SensitivityMode sensitivity = SensitivityMode::kFixed;
  // Debug switch: when false no noise is drawn and every mechanism
  // reproduces the clipped true level exactly.
  bool noise_enabled = true;

  absl::Status Validate() const;
};

// Daily changes of a level series, split by sign.
struct DeltaStream {
  Shares initial_level = 0;
  std::vector<Shares> deltas;  // sigma(t), t = 1..n stored at [t-1]
  std::vector<Shares> pos;     // max(sigma, 0)
  std::vector<Shares> neg;     // min(sigma, 0)

  std::size_t size() const { return deltas.size(); }
  // initial_level + cumulative sums: the level series, length size() + 1.
  std::vector<Shares> Levels() const;
};

absl::StatusOr<DeltaStream> SplitStream(std::span<const Shares> series);
// Same, with each change clipped to `bounds` before splitting.
absl::StatusOr<DeltaStream> SplitStream(std::span<const Shares> series,
                                        ClipBounds bounds);

// Round half away from zero.
Shares RoundShares(double value);

// One released noisy partial sum, recorded for structural checks. The means
// are the noiseless sums; `noise_*` is what was added to them.
struct PartialSumRecord {
  enum class Kind { kItem, kBucket, kNode };
  Kind kind;
  int period;  // index of the reset period
  int time;    // day within the period at release, 1-based
  int index;   // item: time; bucket: d; node: tree level (0-based)
  double mean_pos;
  double mean_neg;
  double noise_pos;
  double noise_neg;
};

enum class ResetPolicy {
  kAuto,  // restart state every `horizon` days
  kNone,  // stepping past the horizon is an error
};

class NaiveMechanism {
 public:
  static absl::StatusOr<NaiveMechanism> Create(Shares initial_level,
                                               const DpParams& params);
  absl::StatusOr<double> Step(Shares sigma_plus, Shares sigma_minus,
                              RngHandle& rng);

 private:
  NaiveMechanism(Shares level, const DpParams& params)
      : params_(params), level_(level) {}
  DpParams params_;
  Shares level_;
};

class SimpleMechanism {
 public:
  static absl::StatusOr<SimpleMechanism> Create(Shares initial_level,
                                                const DpParams& params);
  absl::StatusOr<double> Step(Shares sigma_plus, Shares sigma_minus,
                              RngHandle& rng);

 private:
  SimpleMechanism(Shares level, const DpParams& params)
      : params_(params), published_(static_cast<double>(level)) {}
  DpParams params_;
  double published_;
};

class WindowMechanism {
 public:
  static absl::StatusOr<WindowMechanism> Create(
      Shares initial_level, const DpParams& params,
      ResetPolicy reset = ResetPolicy::kAuto);

  absl::StatusOr<double> Step(Shares sigma_plus, Shares sigma_minus,
                              RngHandle& rng);

  // Day within the current period; 0 before the first step of a period.
  int time() const { return time_; }
  int bucket_index() const { return time_ / params_.bucket; }   // d(t)
  int bucket_offset() const { return time_ % params_.bucket; }  // c(t)
  int period() const { return period_; }

  void set_trace(std::vector<PartialSumRecord>* sink) { trace_ = sink; }

 private:
  WindowMechanism(Shares level, const DpParams& params, ResetPolicy reset)
      : params_(params), reset_(reset), anchor_(static_cast<double>(level)) {}

  absl::StatusOr<NoiseScale> ScaleForWindow() const;
  void ResetPeriod(double published);

  DpParams params_;
  ResetPolicy reset_;
  double anchor_;
  int period_ = 0;
  int time_ = 0;
  double released_buckets_ = 0.0;  // sum of beta+ + beta- of closed buckets
  double released_items_ = 0.0;    // sum of alpha+ + alpha- in the open bucket
  Shares bucket_pos_ = 0;
  Shares bucket_neg_ = 0;
  std::vector<Shares> bucket_values_;  // clipped changes seen in the open bucket
  std::vector<PartialSumRecord>* trace_ = nullptr;
};

class BinaryMechanism {
 public:
  static absl::StatusOr<BinaryMechanism> Create(
      Shares initial_level, const DpParams& params,
      ResetPolicy reset = ResetPolicy::kAuto);

  absl::StatusOr<double> Step(Shares sigma_plus, Shares sigma_minus,
                              RngHandle& rng);

  int time() const { return time_; }
  int levels() const { return static_cast<int>(node_pos_.size()); }
  int period() const { return period_; }
  // Nodes the most recent release summed over: popcount(time()).
  int nodes_in_use() const;

  void set_trace(std::vector<PartialSumRecord>* sink) { trace_ = sink; }

 private:
  BinaryMechanism(Shares level, const DpParams& params, ResetPolicy reset);

  absl::StatusOr<NoiseScale> ScaleForRecent() const;
  void ResetPeriod(double published);

  DpParams params_;
  ResetPolicy reset_;
  double anchor_;
  int period_ = 0;
  int time_ = 0;
  // Exact partial sums per level, and their released noisy versions.
  std::vector<Shares> node_pos_;
  std::vector<Shares> node_neg_;
  std::vector<double> released_pos_;
  std::vector<double> released_neg_;
  std::vector<Shares> recent_values_;  // at most levels()+1 latest changes
  std::vector<PartialSumRecord>* trace_ = nullptr;
};

// Type-erased day-by-day publisher.
class StreamPublisher {
 public:
  static absl::StatusOr<StreamPublisher> Create(
      Mechanism mechanism, Shares initial_level, const DpParams& params);

  Mechanism mechanism() const { return mechanism_; }

  // Consumes one already-clipped change and returns the unrounded release.
  absl::StatusOr<double> Step(Shares sigma, RngHandle& rng);
  absl::StatusOr<double> Step(Shares sigma_plus, Shares sigma_minus,
                              RngHandle& rng);

  // Only window and binary publishers emit partial-sum records.
  void set_trace(std::vector<PartialSumRecord>* sink);

 private:
  using Impl = std::variant<NaiveMechanism, SimpleMechanism, WindowMechanism,
                            BinaryMechanism>;
  StreamPublisher(Mechanism mechanism, Impl impl)
      : mechanism_(mechanism), impl_(std::move(impl)) {}

  Mechanism mechanism_;
  Impl impl_;
};

// Runs `mechanism` over the whole stream. Element 0 is the unperturbed
// initial level; the result has stream.size() + 1 entries, one per input day.
absl::StatusOr<std::vector<Shares>> PublishSeries(
    const DeltaStream& stream, const DpParams& params, Mechanism mechanism,
    RngHandle& rng, std::vector<PartialSumRecord>* trace = nullptr);

}  // namespace axedp

#endif  // AXEDP_MECHANISMS_H_
