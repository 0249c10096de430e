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

// File formats.
//
// Axe and client positions:  date,asset,quantity
// Market quotes:             date,asset,price,funding_rate,borrow_rate
//
// UTF-8, comma separated, no quoting, one header line that must match
// exactly. Every asset is aligned on one grid: all weekdays between the first
// and last date of the file, plus any weekend date that appears in it. A day
// an asset does not report repeats its previous value and is counted as a
// fill. Rates are per day.
//
// Run configuration is an INI file:
//
//   [dp]        epsilon, horizon, bucket, sensitivity (fixed|adaptive), noise
//   [sim]       hit_ratio, holding_period, paths, seed, lags (e.g. 1,5,10),
//               strategy, threads, keep_paths
//   [scenario]  axe, client, market (paths relative to the config file),
//               include_client
//   [adtv]      default and one key per asset; clip bounds are [-ADTV, ADTV]
//   [output]    dir
//
// Errors: malformed or invalid content is InvalidArgument, a missing file is
// NotFound, any other I/O failure is Unavailable.

#ifndef AXEDP_IO_H_
#define AXEDP_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "axedp/dp_core.h"
#include "axedp/finance.h"
#include "axedp/mechanisms.h"
#include "axedp/metrics.h"
#include "axedp/simulator.h"

namespace axedp {

inline constexpr absl::string_view kAxeCsvHeader = "date,asset,quantity";
inline constexpr absl::string_view kMarketCsvHeader =
    "date,asset,price,funding_rate,borrow_rate";
inline constexpr absl::string_view kMetricsCsvHeader =
    "epsilon,T,B,scenario,metric,lag,mean,stderr,n_paths";
inline constexpr absl::string_view kHistogramsCsvHeader =
    "epsilon,T,B,scenario,metric,lag,bin,lo,hi,count";
inline constexpr absl::string_view kPathsCsvHeader =
    "epsilon,T,B,scenario,path,asset,day,date,a_hist,client,a_pre,a_pub,a_hit,"
    "a_post,pnl,over_axe";

// Per-asset position series on a shared date grid. Assets are sorted.
struct AxeTable {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  std::vector<std::vector<Shares>> series;  // [asset][day]
  std::int64_t filled = 0;                  // forward-filled cells

  std::optional<std::size_t> AssetIndex(absl::string_view asset) const;
};

struct MarketTable {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  std::vector<QuoteSeries> quotes;
  std::int64_t filled = 0;

  std::optional<std::size_t> AssetIndex(absl::string_view asset) const;
};

absl::StatusOr<AxeTable> ParseAxeCsv(absl::string_view content,
                                     absl::string_view source = "<input>");
absl::StatusOr<AxeTable> ReadAxeCsv(const std::string& path);
std::string FormatAxeCsv(const AxeTable& table);
absl::Status WriteAxeCsv(const AxeTable& table, const std::string& path);

absl::StatusOr<MarketTable> ParseMarketCsv(absl::string_view content,
                                           absl::string_view source = "<input>");
absl::StatusOr<MarketTable> ReadMarketCsv(const std::string& path);
std::string FormatMarketCsv(const MarketTable& table);

struct RunConfig {
  SimConfig sim;  // sim.dp carries the [dp] section
  std::string axe_path;
  std::string client_path;
  std::string market_path;
  bool include_client = true;
  std::optional<Shares> adtv_default;
  std::map<std::string, Shares> adtv;
  std::string output_dir;

  // ClipBounds::Symmetric of the asset's ADTV, else the default.
  absl::StatusOr<ClipBounds> ClipFor(absl::string_view asset) const;
};

// Parses INI text; relative paths are resolved against `base_dir`.
// File existence is not checked.
absl::StatusOr<RunConfig> ParseRunConfig(absl::string_view content,
                                         const std::string& base_dir);
// Reads, parses and checks that every referenced file exists.
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);
std::string FormatRunConfig(const RunConfig& config);

// Aligns positions, optional client positions and optional quotes into a
// scenario. Client and market tables must cover every axe date. An asset
// missing from the client table gets a zero client series, one missing from
// the market table uses `fallback_quote`.
absl::StatusOr<ScenarioSpec> BuildScenario(
    const AxeTable& axe, const AxeTable* client, const MarketTable* market,
    const RunConfig& config, const MarketQuote& fallback_quote);

// Comma-separated positive lags, e.g. "1,5,10".
absl::StatusOr<std::vector<int>> ParseLags(absl::string_view text);

// Shortest decimal that reads back to the same double.
std::string FormatDouble(double value);

std::string FormatMetricsCsv(const MetricsReport& report);
std::string FormatHistogramsCsv(const MetricsReport& report);
std::string FormatPathsCsv(const MetricsReport& report);
std::string FormatSummaryJson(const MetricsReport& report);

// Writes metrics.csv, histograms.csv, summary.json and, when `with_paths`,
// paths.csv into `dir`, creating it if needed.
absl::Status WriteReport(const MetricsReport& report, const std::string& dir,
                         bool with_paths);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view content);

}  // namespace axedp

#endif  // AXEDP_IO_H_
