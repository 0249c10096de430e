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

#include "axedp/mechanisms.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "axedp/kernels.h"

namespace axedp {

namespace {

absl::Status CheckSplit(Shares sigma_plus, Shares sigma_minus) {
  if (sigma_plus < 0 || sigma_minus > 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "change halves must satisfy pos >= 0 >= neg, got (", sigma_plus, ", ",
        sigma_minus, ")"));
  }
  return absl::OkStatus();
}

double Draw(const DpParams& params, NoiseScale scale, RngHandle& rng) {
  return params.noise_enabled ? SampleLaplace(scale, rng) : 0.0;
}

// Placeholder scale for the noiseless debug mode; never sampled.
NoiseScale UnitScale() { return *NoiseScale::Create(1.0); }

}  // namespace

absl::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kNaive:
      return "naive";
    case Mechanism::kSimple:
      return "simple";
    case Mechanism::kWindow:
      return "window";
    case Mechanism::kBinary:
      return "binary";
  }
  return "unknown";
}

absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name) {
  if (name == "naive") return Mechanism::kNaive;
  if (name == "simple") return Mechanism::kSimple;
  if (name == "window") return Mechanism::kWindow;
  if (name == "binary") return Mechanism::kBinary;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", name, "' (expected naive|simple|window|binary)"));
}

absl::string_view SensitivityModeName(SensitivityMode mode) {
  return mode == SensitivityMode::kFixed ? "fixed" : "adaptive";
}

absl::StatusOr<SensitivityMode> ParseSensitivityMode(absl::string_view name) {
  if (name == "fixed") return SensitivityMode::kFixed;
  if (name == "adaptive") return SensitivityMode::kAdaptive;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown sensitivity mode '", name, "' (expected fixed|adaptive)"));
}

absl::Status DpParams::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  if (horizon < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("horizon T must be >= 1, got ", horizon));
  }
  if (bucket < 1 || bucket > horizon) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bucket B must satisfy 1 <= B <= T, got B=", bucket, " T=", horizon));
  }
  if (noise_enabled && FixedSensitivity(clip) <= 0) {
    return absl::InvalidArgumentError(
        "clip bounds must have positive width when noise is enabled");
  }
  return absl::OkStatus();
}

std::vector<Shares> DeltaStream::Levels() const {
  std::vector<Shares> levels;
  levels.reserve(deltas.size() + 1);
  Shares level = initial_level;
  levels.push_back(level);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    level += pos[i] + neg[i];
    levels.push_back(level);
  }
  return levels;
}

namespace {

DeltaStream SplitDeltas(Shares initial, std::vector<Shares> deltas) {
  DeltaStream stream;
  stream.initial_level = initial;
  stream.pos.reserve(deltas.size());
  stream.neg.reserve(deltas.size());
  for (Shares d : deltas) {
    stream.pos.push_back(std::max<Shares>(d, 0));
    stream.neg.push_back(std::min<Shares>(d, 0));
  }
  stream.deltas = std::move(deltas);
  return stream;
}

}  // namespace

absl::StatusOr<DeltaStream> SplitStream(std::span<const Shares> series) {
  if (series.empty()) {
    return absl::InvalidArgumentError("cannot split an empty series");
  }
  std::vector<Shares> deltas;
  deltas.reserve(series.size() - 1);
  for (std::size_t t = 1; t < series.size(); ++t) {
    deltas.push_back(series[t] - series[t - 1]);
  }
  return SplitDeltas(series.front(), std::move(deltas));
}

absl::StatusOr<DeltaStream> SplitStream(std::span<const Shares> series,
                                        ClipBounds bounds) {
  if (series.empty()) {
    return absl::InvalidArgumentError("cannot split an empty series");
  }
  std::vector<Shares> deltas(series.size() - 1);
  kernels::DiffClip(series, bounds.lo(), bounds.hi(), deltas);
  return SplitDeltas(series.front(), std::move(deltas));
}

Shares RoundShares(double value) { return std::llround(value); }

// ---------------------------------------------------------------- naive

absl::StatusOr<NaiveMechanism> NaiveMechanism::Create(Shares initial_level,
                                                      const DpParams& params) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  return NaiveMechanism(initial_level, params);
}

absl::StatusOr<double> NaiveMechanism::Step(Shares sigma_plus,
                                            Shares sigma_minus, RngHandle& rng) {
  if (absl::Status s = CheckSplit(sigma_plus, sigma_minus); !s.ok()) return s;
  level_ += sigma_plus + sigma_minus;
  double noise = 0.0;
  if (params_.noise_enabled) {
    absl::StatusOr<NoiseScale> scale = FixedScale(params_.clip, params_.epsilon);
    if (!scale.ok()) return scale.status();
    noise = SampleLaplace(*scale, rng);
  }
  return static_cast<double>(level_) + noise;
}

// ---------------------------------------------------------------- simple

absl::StatusOr<SimpleMechanism> SimpleMechanism::Create(
    Shares initial_level, const DpParams& params) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  return SimpleMechanism(initial_level, params);
}

absl::StatusOr<double> SimpleMechanism::Step(Shares sigma_plus,
                                             Shares sigma_minus,
                                             RngHandle& rng) {
  if (absl::Status s = CheckSplit(sigma_plus, sigma_minus); !s.ok()) return s;
  double noise = 0.0;
  if (params_.noise_enabled) {
    absl::StatusOr<NoiseScale> scale = FixedScale(params_.clip, params_.epsilon);
    if (!scale.ok()) return scale.status();
    noise = SampleLaplace(*scale, rng);
  }
  published_ += static_cast<double>(sigma_plus + sigma_minus) + noise;
  return published_;
}

// ---------------------------------------------------------------- window

absl::StatusOr<WindowMechanism> WindowMechanism::Create(Shares initial_level,
                                                        const DpParams& params,
                                                        ResetPolicy reset) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  WindowMechanism mechanism(initial_level, params, reset);
  mechanism.bucket_values_.reserve(params.bucket);
  return mechanism;
}

absl::StatusOr<NoiseScale> WindowMechanism::ScaleForWindow() const {
  if (!params_.noise_enabled) return UnitScale();
  if (params_.sensitivity == SensitivityMode::kAdaptive) {
    return AdaptiveScale(bucket_values_, params_.epsilon, params_.clip);
  }
  return FixedScale(params_.clip, params_.epsilon);
}

void WindowMechanism::ResetPeriod(double published) {
  anchor_ = published;
  ++period_;
  time_ = 0;
  released_buckets_ = 0.0;
  released_items_ = 0.0;
  bucket_pos_ = 0;
  bucket_neg_ = 0;
  bucket_values_.clear();
}

absl::StatusOr<double> WindowMechanism::Step(Shares sigma_plus,
                                             Shares sigma_minus,
                                             RngHandle& rng) {
  if (absl::Status s = CheckSplit(sigma_plus, sigma_minus); !s.ok()) return s;
  if (time_ >= params_.horizon) {
    return absl::FailedPreconditionError(absl::StrCat(
        "window mechanism stepped past its horizon T=", params_.horizon,
        " without a reset"));
  }
  ++time_;
  bucket_pos_ += sigma_plus;
  bucket_neg_ += sigma_minus;
  bucket_values_.push_back(sigma_plus + sigma_minus);

  absl::StatusOr<NoiseScale> scale = ScaleForWindow();
  if (!scale.ok()) return scale.status();
  const double theta_pos = Draw(params_, *scale, rng);
  const double theta_neg = Draw(params_, *scale, rng);

  const int offset = time_ % params_.bucket;
  if (offset != 0) {
    released_items_ += (static_cast<double>(sigma_plus) + theta_pos) +
                       (static_cast<double>(sigma_minus) + theta_neg);
    if (trace_ != nullptr) {
      trace_->push_back({PartialSumRecord::Kind::kItem, period_, time_, time_,
                         static_cast<double>(sigma_plus),
                         static_cast<double>(sigma_minus), theta_pos,
                         theta_neg});
    }
  } else {
    // Bucket closes: its per-day releases are superseded by one bucket sum.
    released_buckets_ += (static_cast<double>(bucket_pos_) + theta_pos) +
                         (static_cast<double>(bucket_neg_) + theta_neg);
    if (trace_ != nullptr) {
      trace_->push_back({PartialSumRecord::Kind::kBucket, period_, time_,
                         time_ / params_.bucket,
                         static_cast<double>(bucket_pos_),
                         static_cast<double>(bucket_neg_), theta_pos,
                         theta_neg});
    }
    released_items_ = 0.0;
    bucket_pos_ = 0;
    bucket_neg_ = 0;
    bucket_values_.clear();
  }

  const double published = anchor_ + released_buckets_ + released_items_;
  if (time_ == params_.horizon && reset_ == ResetPolicy::kAuto) {
    ResetPeriod(published);
  }
  return published;
}

// ---------------------------------------------------------------- binary

BinaryMechanism::BinaryMechanism(Shares level, const DpParams& params,
                                 ResetPolicy reset)
    : params_(params), reset_(reset), anchor_(static_cast<double>(level)) {
  const int levels =
      std::bit_width(static_cast<unsigned>(params.horizon));
  node_pos_.assign(levels, 0);
  node_neg_.assign(levels, 0);
  released_pos_.assign(levels, 0.0);
  released_neg_.assign(levels, 0.0);
  recent_values_.reserve(levels + 1);
}

absl::StatusOr<BinaryMechanism> BinaryMechanism::Create(Shares initial_level,
                                                        const DpParams& params,
                                                        ResetPolicy reset) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  return BinaryMechanism(initial_level, params, reset);
}

int BinaryMechanism::nodes_in_use() const {
  return std::popcount(static_cast<unsigned>(time_));
}

absl::StatusOr<NoiseScale> BinaryMechanism::ScaleForRecent() const {
  if (!params_.noise_enabled) return UnitScale();
  absl::StatusOr<NoiseScale> base =
      params_.sensitivity == SensitivityMode::kAdaptive
          ? AdaptiveScale(recent_values_, params_.epsilon, params_.clip)
          : FixedScale(params_.clip, params_.epsilon);
  if (!base.ok()) return base.status();
  // Each day sits in one node per level.
  return NoiseScale::Create(levels() * base->lambda());
}

void BinaryMechanism::ResetPeriod(double published) {
  anchor_ = published;
  ++period_;
  time_ = 0;
  std::fill(node_pos_.begin(), node_pos_.end(), 0);
  std::fill(node_neg_.begin(), node_neg_.end(), 0);
  std::fill(released_pos_.begin(), released_pos_.end(), 0.0);
  std::fill(released_neg_.begin(), released_neg_.end(), 0.0);
  recent_values_.clear();
}

absl::StatusOr<double> BinaryMechanism::Step(Shares sigma_plus,
                                             Shares sigma_minus,
                                             RngHandle& rng) {
  if (absl::Status s = CheckSplit(sigma_plus, sigma_minus); !s.ok()) return s;
  if (time_ >= params_.horizon) {
    return absl::FailedPreconditionError(absl::StrCat(
        "binary mechanism stepped past its horizon T=", params_.horizon,
        " without a reset"));
  }
  ++time_;
  const int level = std::countr_zero(static_cast<unsigned>(time_));

  // The node closing at `level` absorbs every lower node plus today.
  Shares sum_pos = sigma_plus;
  Shares sum_neg = sigma_minus;
  for (int j = 0; j < level; ++j) {
    sum_pos += node_pos_[j];
    sum_neg += node_neg_[j];
    node_pos_[j] = 0;
    node_neg_[j] = 0;
    released_pos_[j] = 0.0;
    released_neg_[j] = 0.0;
  }
  node_pos_[level] = sum_pos;
  node_neg_[level] = sum_neg;

  if (recent_values_.size() == static_cast<std::size_t>(levels()) + 1) {
    recent_values_.erase(recent_values_.begin());
  }
  recent_values_.push_back(sigma_plus + sigma_minus);

  absl::StatusOr<NoiseScale> scale = ScaleForRecent();
  if (!scale.ok()) return scale.status();
  const double theta_pos = Draw(params_, *scale, rng);
  const double theta_neg = Draw(params_, *scale, rng);
  released_pos_[level] = static_cast<double>(sum_pos) + theta_pos;
  released_neg_[level] = static_cast<double>(sum_neg) + theta_neg;
  if (trace_ != nullptr) {
    trace_->push_back({PartialSumRecord::Kind::kNode, period_, time_, level,
                       static_cast<double>(sum_pos),
                       static_cast<double>(sum_neg), theta_pos, theta_neg});
  }

  double published = anchor_;
  for (int j = 0; j < levels(); ++j) {
    if ((time_ >> j) & 1) published += released_pos_[j] + released_neg_[j];
  }
  if (time_ == params_.horizon && reset_ == ResetPolicy::kAuto) {
    ResetPeriod(published);
  }
  return published;
}

// ---------------------------------------------------------------- publisher

absl::StatusOr<StreamPublisher> StreamPublisher::Create(Mechanism mechanism,
                                                        Shares initial_level,
                                                        const DpParams& params) {
  switch (mechanism) {
    case Mechanism::kNaive: {
      auto m = NaiveMechanism::Create(initial_level, params);
      if (!m.ok()) return m.status();
      return StreamPublisher(mechanism, *std::move(m));
    }
    case Mechanism::kSimple: {
      auto m = SimpleMechanism::Create(initial_level, params);
      if (!m.ok()) return m.status();
      return StreamPublisher(mechanism, *std::move(m));
    }
    case Mechanism::kWindow: {
      auto m = WindowMechanism::Create(initial_level, params);
      if (!m.ok()) return m.status();
      return StreamPublisher(mechanism, *std::move(m));
    }
    case Mechanism::kBinary: {
      auto m = BinaryMechanism::Create(initial_level, params);
      if (!m.ok()) return m.status();
      return StreamPublisher(mechanism, *std::move(m));
    }
  }
  return absl::InvalidArgumentError("unknown mechanism");
}

absl::StatusOr<double> StreamPublisher::Step(Shares sigma, RngHandle& rng) {
  return Step(std::max<Shares>(sigma, 0), std::min<Shares>(sigma, 0), rng);
}

absl::StatusOr<double> StreamPublisher::Step(Shares sigma_plus,
                                             Shares sigma_minus,
                                             RngHandle& rng) {
  return std::visit(
      [&](auto& m) { return m.Step(sigma_plus, sigma_minus, rng); }, impl_);
}

void StreamPublisher::set_trace(std::vector<PartialSumRecord>* sink) {
  if (auto* w = std::get_if<WindowMechanism>(&impl_)) w->set_trace(sink);
  if (auto* b = std::get_if<BinaryMechanism>(&impl_)) b->set_trace(sink);
}

absl::StatusOr<std::vector<Shares>> PublishSeries(
    const DeltaStream& stream, const DpParams& params, Mechanism mechanism,
    RngHandle& rng, std::vector<PartialSumRecord>* trace) {
  if (stream.pos.size() != stream.size() || stream.neg.size() != stream.size()) {
    return absl::InvalidArgumentError("delta stream halves are misaligned");
  }
  absl::StatusOr<StreamPublisher> publisher =
      StreamPublisher::Create(mechanism, stream.initial_level, params);
  if (!publisher.ok()) return publisher.status();
  publisher->set_trace(trace);

  std::vector<Shares> published;
  published.reserve(stream.size() + 1);
  published.push_back(stream.initial_level);
  for (std::size_t t = 0; t < stream.size(); ++t) {
    absl::StatusOr<double> value =
        publisher->Step(stream.pos[t], stream.neg[t], rng);
    if (!value.ok()) return value.status();
    published.push_back(RoundShares(*value));
  }
  return published;
}

}  // namespace axedp
