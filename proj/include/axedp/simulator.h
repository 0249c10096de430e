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

// Monte Carlo axe simulation.
//
// Each simulated day of one asset:
//
//   pre(t)  = hist(t) - sum of hits executed on days [t-H, t)
//   pub(t)  = F(pre(t)), or F(pre(t) + client(t)) when the client is excluded
//   hit(t)  = round(h * pub(t)), never larger than |pub(t)|
//   post(t) = pre(t) - hit(t)
//
// F is a stateful publisher fed with the clipped daily change of its input,
// so executed hits feed back into later noise inputs. P&L and over-axe are
// measured against pre(t), which always contains the client.
//
// Randomness comes from one RngHandle per (asset, path), keyed from the master
// seed. Reports are independent of thread count and scheduling.

#ifndef AXEDP_SIMULATOR_H_
#define AXEDP_SIMULATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "axedp/dp_core.h"
#include "axedp/finance.h"
#include "axedp/mechanisms.h"
#include "axedp/metrics.h"

namespace axedp {

enum class Strategy { kNone, kWindow, kBinary, kNaive, kSimple };

absl::string_view StrategyName(Strategy strategy);
absl::StatusOr<Strategy> ParseStrategy(absl::string_view name);

// Default market when no quotes are supplied: P = 10, r_F = 2%/yr,
// r_B = 1%/yr, both converted to per-day rates.
MarketQuote DefaultQuote();

struct AssetSeries {
  std::string id;
  std::vector<Shares> hist;    // a_HIST
  std::vector<Shares> client;  // concentrated client position; may be empty
  QuoteSeries quotes;
  ClipBounds clip;  // from the ADTV table, never from the data
};

struct ScenarioSpec {
  std::vector<std::string> dates;  // optional; one per day when present
  std::vector<AssetSeries> assets;
  bool include_client = true;

  std::size_t days() const {
    return assets.empty() ? 0 : assets.front().hist.size();
  }
  // True when every asset carries a client series.
  bool HasClient() const;
  absl::Status Validate() const;
};

struct SimConfig {
  double hit_ratio = 0.05;
  int holding_period = 10;
  int n_paths = 100;
  std::uint64_t master_seed = 0;
  std::vector<int> lags = DefaultLags();
  Strategy strategy = Strategy::kWindow;
  DpParams dp;  // dp.clip is replaced by each asset's clip
  int threads = 0;  // 0: one per hardware thread
  bool keep_paths = false;

  absl::Status Validate() const;
  GridPoint point() const { return {dp.epsilon, dp.horizon, dp.bucket}; }
};

// Outstanding executed hits over the last H days.
class HoldingBook {
 public:
  explicit HoldingBook(int holding_period);

  // Sum of the hits recorded on the previous H days.
  Shares outstanding() const { return outstanding_; }
  // Records today's hit; the hit recorded H days ago expires.
  void Record(Shares hit);

 private:
  std::vector<Shares> ring_;
  std::size_t next_ = 0;
  Shares outstanding_ = 0;
};

// Per-day series for one asset on one path.
struct AssetPath {
  std::vector<Shares> a_pre;
  std::vector<Shares> a_pub;
  std::vector<Shares> a_hit;
  std::vector<Shares> a_post;
  std::vector<double> pnl;       // marginal axe P&L
  std::vector<double> over_axe;  // over-axe quantity
  std::vector<double> over_axe_cost;
};

absl::StatusOr<AssetPath> RunAssetPath(const AssetSeries& asset,
                                       bool include_client,
                                       const SimConfig& config,
                                       RngHandle& rng);

// All assets of one path, each with its own keyed RNG stream.
absl::StatusOr<std::vector<AssetPath>> RunPath(const ScenarioSpec& scenario,
                                               const SimConfig& config,
                                               std::uint64_t path_index);

// Path-level statistics, averaged over assets.
struct PathSummary {
  double pnl = 0.0;         // mean daily marginal P&L per asset
  std::vector<double> lp;   // leakage probability per configured lag
  double oa_freq = 0.0;     // share of asset-days over-axed
  double oa_cost = 0.0;     // mean daily worst-case cost per asset
};

PathSummary Summarize(const ScenarioSpec& scenario, const SimConfig& config,
                      const std::vector<AssetPath>& paths);

struct SimulationResult {
  std::vector<PathSummary> summaries;  // indexed by path
  std::vector<PathRecord> records;     // only with keep_paths
};

// Runs config.n_paths paths in parallel; results ordered by path index.
absl::StatusOr<SimulationResult> SimulatePaths(const ScenarioSpec& scenario,
                                               const SimConfig& config,
                                               absl::string_view label);

// Mean/SE rows for pnl, lp (per lag, with histograms), oa_freq, oa_cost.
absl::Status AddSummaryRows(const GridPoint& point, const std::string& scenario,
                            const std::vector<int>& lags,
                            const std::vector<PathSummary>& summaries,
                            MetricsReport& report);

// Paired differences a - b of the same metrics, path by path.
absl::Status AddDifferenceRows(const GridPoint& point,
                               const std::string& scenario,
                               const std::vector<int>& lags,
                               const std::vector<PathSummary>& a,
                               const std::vector<PathSummary>& b,
                               bool pnl_only, MetricsReport& report);

// Rows for one scenario, labelled obf_incl, obf_excl, nonobf_incl or
// nonobf_excl.
absl::StatusOr<MetricsReport> RunMonteCarlo(const ScenarioSpec& scenario,
                                            const SimConfig& config);

// Scenario labels used by CompareWithWithoutClient.
inline constexpr absl::string_view kObfIncl = "obf_incl";
inline constexpr absl::string_view kObfExcl = "obf_excl";
inline constexpr absl::string_view kTrueIncl = "nonobf_incl";
inline constexpr absl::string_view kTrueExcl = "nonobf_excl";
inline constexpr absl::string_view kInclMinusExcl = "incl_minus_excl";
inline constexpr absl::string_view kInclMinusTrue = "incl_minus_true";
inline constexpr absl::string_view kExclMinusTrue = "excl_minus_true";

// Obfuscated and true-axe publication, each with and without the client,
// all four on the same keyed RNG streams. Emits the four base scenarios and
// the paired differences incl_minus_excl (all metrics), incl_minus_true and
// excl_minus_true (P&L).
absl::StatusOr<MetricsReport> CompareWithWithoutClient(
    const ScenarioSpec& scenario, const SimConfig& config);

// One comparison (or plain run) per grid point, all on the master seed.
absl::StatusOr<MetricsReport> Sweep(const ScenarioSpec& scenario,
                                    const std::vector<GridPoint>& grid,
                                    const SimConfig& config,
                                    bool compare_client);

struct SynthOptions {
  int days = 44;  // two months of business days
  Shares start_position = 100000;
  double ramp_factor = 10.0;
  Shares adtv = 25000;
  MarketQuote quote = DefaultQuote();
  std::string start_date = "2024-01-02";
  std::string asset = "SYNTH";
};

// One asset whose whole axe is a single client ramping linearly from
// start_position to ramp_factor * start_position: hist = -client.
absl::StatusOr<ScenarioSpec> SynthConcentratedScenario(
    const SynthOptions& options = {});

}  // namespace axedp

#endif  // AXEDP_SIMULATOR_H_
