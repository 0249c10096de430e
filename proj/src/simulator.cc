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

#include "axedp/simulator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "axedp/calendar.h"
#include "axedp/kernels.h"

namespace axedp {
namespace {

absl::StatusOr<Mechanism> MechanismFor(Strategy strategy) {
  switch (strategy) {
    case Strategy::kWindow:
      return Mechanism::kWindow;
    case Strategy::kBinary:
      return Mechanism::kBinary;
    case Strategy::kNaive:
      return Mechanism::kNaive;
    case Strategy::kSimple:
      return Mechanism::kSimple;
    case Strategy::kNone:
      break;
  }
  return absl::InvalidArgumentError("strategy 'none' has no mechanism");
}

std::string ScenarioLabel(Strategy strategy, bool include_client) {
  return absl::StrCat(strategy == Strategy::kNone ? "nonobf" : "obf",
                      include_client ? "_incl" : "_excl");
}

int WorkerCount(const SimConfig& config) {
  int threads = config.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(threads, 1, config.n_paths);
}

}  // namespace

absl::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kNone:
      return "none";
    case Strategy::kWindow:
      return "window";
    case Strategy::kBinary:
      return "binary";
    case Strategy::kNaive:
      return "naive";
    case Strategy::kSimple:
      return "simple";
  }
  return "unknown";
}

absl::StatusOr<Strategy> ParseStrategy(absl::string_view name) {
  for (Strategy s : {Strategy::kNone, Strategy::kWindow, Strategy::kBinary,
                     Strategy::kNaive, Strategy::kSimple}) {
    if (StrategyName(s) == name) return s;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown strategy '", name, "' (none|window|binary|naive|simple)"));
}

MarketQuote DefaultQuote() {
  return {10.0, 0.02 / kTradingDaysPerYear, 0.01 / kTradingDaysPerYear};
}

bool ScenarioSpec::HasClient() const {
  if (assets.empty()) return false;
  return std::all_of(assets.begin(), assets.end(), [](const AssetSeries& a) {
    return !a.client.empty();
  });
}

absl::Status ScenarioSpec::Validate() const {
  if (assets.empty()) {
    return absl::InvalidArgumentError("scenario has no assets");
  }
  const std::size_t n = days();
  if (n == 0) return absl::InvalidArgumentError("scenario has no days");
  if (!dates.empty() && dates.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "scenario has ", dates.size(), " dates for ", n, " days"));
  }
  std::set<std::string> ids;
  for (const AssetSeries& asset : assets) {
    if (asset.id.empty()) {
      return absl::InvalidArgumentError("asset with empty id");
    }
    if (!ids.insert(asset.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate asset '", asset.id, "'"));
    }
    if (asset.hist.size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "' has ", asset.hist.size(),
                       " days, expected ", n));
    }
    if (!asset.client.empty() && asset.client.size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "' client series has ",
                       asset.client.size(), " days, expected ", n));
    }
    if (asset.quotes.size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "' has ", asset.quotes.size(),
                       " quotes, expected ", n));
    }
    if (absl::Status s = asset.quotes.Validate(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "': ", s.message()));
    }
  }
  return absl::OkStatus();
}

absl::Status SimConfig::Validate() const {
  if (!(hit_ratio >= 0.0 && hit_ratio <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("hit ratio must be in [0, 1], got ", hit_ratio));
  }
  if (holding_period < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "holding period must be at least 1, got ", holding_period));
  }
  if (n_paths < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("path count must be at least 1, got ", n_paths));
  }
  for (int lag : lags) {
    if (lag < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("lag must be at least 1, got ", lag));
    }
  }
  if (strategy != Strategy::kNone) {
    DpParams probe = dp;
    // Clip bounds are per asset and checked when each publisher starts.
    probe.clip = *ClipBounds::Symmetric(1);
    if (absl::Status s = probe.Validate(); !s.ok()) return s;
  }
  return absl::OkStatus();
}

HoldingBook::HoldingBook(int holding_period)
    : ring_(static_cast<std::size_t>(std::max(holding_period, 1)), 0) {}

void HoldingBook::Record(Shares hit) {
  outstanding_ += hit - ring_[next_];
  ring_[next_] = hit;
  next_ = (next_ + 1) % ring_.size();
}

absl::StatusOr<AssetPath> RunAssetPath(const AssetSeries& asset,
                                       bool include_client,
                                       const SimConfig& config,
                                       RngHandle& rng) {
  const std::size_t n = asset.hist.size();
  if (asset.quotes.size() != n ||
      (!asset.client.empty() && asset.client.size() != n)) {
    return absl::InvalidArgumentError(
        absl::StrCat("asset '", asset.id, "' has misaligned series"));
  }
  if (absl::Status s = asset.quotes.ValidatePositiveRates(); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("asset '", asset.id, "': ", s.message()));
  }

  AssetPath out;
  out.a_pre.resize(n);
  out.a_pub.resize(n);
  out.a_hit.resize(n);
  out.a_post.resize(n);

  DpParams params = config.dp;
  params.clip = asset.clip;
  std::optional<StreamPublisher> publisher;
  HoldingBook book(config.holding_period);
  Shares prev_input = 0;

  for (std::size_t t = 0; t < n; ++t) {
    const Shares pre = asset.hist[t] - book.outstanding();
    const Shares client = asset.client.empty() ? 0 : asset.client[t];
    const Shares input = include_client ? pre : pre + client;

    Shares pub = input;
    if (config.strategy != Strategy::kNone) {
      if (t == 0) {
        absl::StatusOr<Mechanism> mechanism = MechanismFor(config.strategy);
        if (!mechanism.ok()) return mechanism.status();
        absl::StatusOr<StreamPublisher> created =
            StreamPublisher::Create(*mechanism, input, params);
        if (!created.ok()) return created.status();
        publisher.emplace(*std::move(created));
      } else {
        const Shares sigma = Clip(input - prev_input, asset.clip);
        absl::StatusOr<double> value = publisher->Step(sigma, rng);
        if (!value.ok()) return value.status();
        pub = RoundShares(*value);
      }
    }
    prev_input = input;

    Shares hit = RoundShares(config.hit_ratio * static_cast<double>(pub));
    if (std::llabs(hit) > std::llabs(pub)) hit = pub;

    out.a_pre[t] = pre;
    out.a_pub[t] = pub;
    out.a_hit[t] = hit;
    out.a_post[t] = pre - hit;
    book.Record(hit);
  }

  std::vector<double> hit(out.a_hit.begin(), out.a_hit.end());
  std::vector<double> pre(out.a_pre.begin(), out.a_pre.end());
  std::vector<double> pub(out.a_pub.begin(), out.a_pub.end());
  out.pnl.resize(n);
  out.over_axe.resize(n);
  out.over_axe_cost.resize(n);
  kernels::MarginalPnl(hit, pre, asset.quotes.columns(), out.pnl);
  kernels::OverAxeQuantity(pub, pre, asset.quotes.columns(), out.over_axe);
  for (std::size_t t = 0; t < n; ++t) {
    out.over_axe_cost[t] =
        OverAxeCostFromQuantity(out.over_axe[t], pre[t], asset.quotes.at(t));
  }
  return out;
}

absl::StatusOr<std::vector<AssetPath>> RunPath(const ScenarioSpec& scenario,
                                               const SimConfig& config,
                                               std::uint64_t path_index) {
  std::vector<AssetPath> paths;
  paths.reserve(scenario.assets.size());
  for (std::size_t a = 0; a < scenario.assets.size(); ++a) {
    RngHandle rng(config.master_seed,
                  DeriveStreamId(config.master_seed, a, path_index));
    absl::StatusOr<AssetPath> path = RunAssetPath(
        scenario.assets[a], scenario.include_client, config, rng);
    if (!path.ok()) return path.status();
    paths.push_back(*std::move(path));
  }
  return paths;
}

PathSummary Summarize(const ScenarioSpec& scenario, const SimConfig& config,
                      const std::vector<AssetPath>& paths) {
  PathSummary summary;
  std::vector<kernels::LeakCount> leaks(config.lags.size());
  std::int64_t over_days = 0;
  std::int64_t total_days = 0;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    const AssetPath& path = paths[a];
    const AssetSeries& asset = scenario.assets[a];
    const double n = static_cast<double>(path.pnl.size());
    double pnl = 0.0;
    double cost = 0.0;
    for (std::size_t t = 0; t < path.pnl.size(); ++t) {
      pnl += path.pnl[t];
      cost += path.over_axe_cost[t];
      if (path.over_axe[t] > 0.0) ++over_days;
    }
    total_days += static_cast<std::int64_t>(path.pnl.size());
    summary.pnl += pnl / n;
    summary.oa_cost += cost / n;
    if (!asset.client.empty()) {
      for (std::size_t k = 0; k < config.lags.size(); ++k) {
        const kernels::LeakCount c = kernels::CountLeaks(
            asset.client, path.a_pub,
            static_cast<std::size_t>(config.lags[k]));
        leaks[k].leaks += c.leaks;
        leaks[k].eligible += c.eligible;
      }
    }
  }
  const double assets = static_cast<double>(std::max<std::size_t>(paths.size(), 1));
  summary.pnl /= assets;
  summary.oa_cost /= assets;
  summary.oa_freq = total_days == 0 ? 0.0
                                    : static_cast<double>(over_days) /
                                          static_cast<double>(total_days);
  summary.lp.reserve(leaks.size());
  for (const kernels::LeakCount& c : leaks) summary.lp.push_back(LeakRatio(c));
  return summary;
}

absl::StatusOr<SimulationResult> SimulatePaths(const ScenarioSpec& scenario,
                                               const SimConfig& config,
                                               absl::string_view label) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (absl::Status s = scenario.Validate(); !s.ok()) return s;
  if (absl::Status s = ValidateLags(config.lags, scenario.days()); !s.ok()) {
    return s;
  }
  for (const AssetSeries& asset : scenario.assets) {
    if (absl::Status s = asset.quotes.ValidatePositiveRates(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "': ", s.message()));
    }
  }

  const std::size_t n_paths = static_cast<std::size_t>(config.n_paths);
  std::vector<PathSummary> summaries(n_paths);
  std::vector<std::vector<PathRecord>> records(config.keep_paths ? n_paths : 0);
  std::vector<absl::Status> errors(n_paths);
  std::atomic<std::size_t> next{0};
  const GridPoint point = config.point();

  auto worker = [&]() {
    for (std::size_t p = next.fetch_add(1); p < n_paths;
         p = next.fetch_add(1)) {
      absl::StatusOr<std::vector<AssetPath>> paths =
          RunPath(scenario, config, p);
      if (!paths.ok()) {
        errors[p] = paths.status();
        continue;
      }
      summaries[p] = Summarize(scenario, config, *paths);
      if (!config.keep_paths) continue;
      for (std::size_t a = 0; a < paths->size(); ++a) {
        const AssetSeries& asset = scenario.assets[a];
        const AssetPath& path = (*paths)[a];
        for (std::size_t t = 0; t < path.a_pre.size(); ++t) {
          PathRecord r;
          r.point = point;
          r.scenario = std::string(label);
          r.path = static_cast<std::int64_t>(p);
          r.asset = asset.id;
          r.day = static_cast<int>(t);
          if (!scenario.dates.empty()) r.date = scenario.dates[t];
          r.a_hist = asset.hist[t];
          r.client = asset.client.empty() ? 0 : asset.client[t];
          r.a_pre = path.a_pre[t];
          r.a_pub = path.a_pub[t];
          r.a_hit = path.a_hit[t];
          r.a_post = path.a_post[t];
          r.pnl = path.pnl[t];
          r.over_axe = path.over_axe[t];
          records[p].push_back(std::move(r));
        }
      }
    }
  };

  const int workers = WorkerCount(config);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const absl::Status& s : errors) {
    if (!s.ok()) return s;
  }
  SimulationResult result;
  result.summaries = std::move(summaries);
  for (std::vector<PathRecord>& r : records) {
    result.records.insert(result.records.end(),
                          std::make_move_iterator(r.begin()),
                          std::make_move_iterator(r.end()));
  }
  return result;
}

absl::Status AddSummaryRows(const GridPoint& point, const std::string& scenario,
                            const std::vector<int>& lags,
                            const std::vector<PathSummary>& summaries,
                            MetricsReport& report) {
  std::vector<double> values(summaries.size());
  auto column = [&](auto get) -> std::span<const double> {
    for (std::size_t i = 0; i < summaries.size(); ++i) {
      values[i] = get(summaries[i]);
    }
    return values;
  };
  absl::Status s = AddSampleMetric(
      point, scenario, "pnl", 0,
      column([](const PathSummary& p) { return p.pnl; }), false, report);
  if (!s.ok()) return s;
  for (std::size_t k = 0; k < lags.size(); ++k) {
    s = AddSampleMetric(
        point, scenario, "lp", lags[k],
        column([k](const PathSummary& p) { return p.lp[k]; }), true, report);
    if (!s.ok()) return s;
  }
  s = AddSampleMetric(
      point, scenario, "oa_freq", 0,
      column([](const PathSummary& p) { return p.oa_freq; }), false, report);
  if (!s.ok()) return s;
  return AddSampleMetric(
      point, scenario, "oa_cost", 0,
      column([](const PathSummary& p) { return p.oa_cost; }), false, report);
}

absl::Status AddDifferenceRows(const GridPoint& point,
                               const std::string& scenario,
                               const std::vector<int>& lags,
                               const std::vector<PathSummary>& a,
                               const std::vector<PathSummary>& b,
                               bool pnl_only, MetricsReport& report) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError("paired runs differ in path count");
  }
  std::vector<double> values(a.size());
  auto column = [&](auto get) -> std::span<const double> {
    for (std::size_t i = 0; i < a.size(); ++i) {
      values[i] = get(a[i]) - get(b[i]);
    }
    return values;
  };
  absl::Status s = AddSampleMetric(
      point, scenario, "pnl", 0,
      column([](const PathSummary& p) { return p.pnl; }), false, report);
  if (!s.ok() || pnl_only) return s;
  for (std::size_t k = 0; k < lags.size(); ++k) {
    s = AddSampleMetric(
        point, scenario, "lp", lags[k],
        column([k](const PathSummary& p) { return p.lp[k]; }), false, report);
    if (!s.ok()) return s;
  }
  s = AddSampleMetric(
      point, scenario, "oa_freq", 0,
      column([](const PathSummary& p) { return p.oa_freq; }), false, report);
  if (!s.ok()) return s;
  return AddSampleMetric(
      point, scenario, "oa_cost", 0,
      column([](const PathSummary& p) { return p.oa_cost; }), false, report);
}

absl::StatusOr<MetricsReport> RunMonteCarlo(const ScenarioSpec& scenario,
                                            const SimConfig& config) {
  const std::string label =
      ScenarioLabel(config.strategy, scenario.include_client);
  absl::StatusOr<SimulationResult> result =
      SimulatePaths(scenario, config, label);
  if (!result.ok()) return result.status();
  MetricsReport report;
  if (absl::Status s = AddSummaryRows(config.point(), label, config.lags,
                                      result->summaries, report);
      !s.ok()) {
    return s;
  }
  report.paths = std::move(result->records);
  return report;
}

absl::StatusOr<MetricsReport> CompareWithWithoutClient(
    const ScenarioSpec& scenario, const SimConfig& config) {
  if (!scenario.HasClient()) {
    return absl::InvalidArgumentError(
        "client comparison needs a client series for every asset");
  }
  struct Run {
    absl::string_view label;
    Strategy strategy;
    bool include_client;
  };
  const Run runs[] = {
      {kObfIncl, config.strategy, true},
      {kObfExcl, config.strategy, false},
      {kTrueIncl, Strategy::kNone, true},
      {kTrueExcl, Strategy::kNone, false},
  };
  const GridPoint point = config.point();
  MetricsReport report;
  std::vector<std::vector<PathSummary>> summaries;
  for (const Run& run : runs) {
    ScenarioSpec variant = scenario;
    variant.include_client = run.include_client;
    SimConfig cfg = config;
    cfg.strategy = run.strategy;
    absl::StatusOr<SimulationResult> result =
        SimulatePaths(variant, cfg, run.label);
    if (!result.ok()) return result.status();
    if (absl::Status s = AddSummaryRows(point, std::string(run.label),
                                        config.lags, result->summaries, report);
        !s.ok()) {
      return s;
    }
    report.paths.insert(report.paths.end(),
                        std::make_move_iterator(result->records.begin()),
                        std::make_move_iterator(result->records.end()));
    summaries.push_back(std::move(result->summaries));
  }
  absl::Status s =
      AddDifferenceRows(point, std::string(kInclMinusExcl), config.lags,
                        summaries[0], summaries[1], false, report);
  if (!s.ok()) return s;
  s = AddDifferenceRows(point, std::string(kInclMinusTrue), config.lags,
                        summaries[0], summaries[2], true, report);
  if (!s.ok()) return s;
  s = AddDifferenceRows(point, std::string(kExclMinusTrue), config.lags,
                        summaries[1], summaries[2], true, report);
  if (!s.ok()) return s;
  return report;
}

absl::StatusOr<MetricsReport> Sweep(const ScenarioSpec& scenario,
                                    const std::vector<GridPoint>& grid,
                                    const SimConfig& config,
                                    bool compare_client) {
  if (grid.empty()) {
    return absl::InvalidArgumentError("sweep grid is empty");
  }
  MetricsReport report;
  for (const GridPoint& point : grid) {
    SimConfig cfg = config;
    cfg.dp.epsilon = point.epsilon;
    cfg.dp.horizon = point.horizon;
    cfg.dp.bucket = point.bucket;
    absl::StatusOr<MetricsReport> part =
        compare_client ? CompareWithWithoutClient(scenario, cfg)
                       : RunMonteCarlo(scenario, cfg);
    if (!part.ok()) {
      return absl::Status(
          part.status().code(),
          absl::StrCat("grid point eps=", point.epsilon, " T=", point.horizon,
                       " B=", point.bucket, ": ", part.status().message()));
    }
    report.Append(*std::move(part));
  }
  return report;
}

absl::StatusOr<ScenarioSpec> SynthConcentratedScenario(
    const SynthOptions& options) {
  if (options.days < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("synthetic scenario needs at least 2 days, got ",
                     options.days));
  }
  if (!(options.ramp_factor > 0.0) || !std::isfinite(options.ramp_factor)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ramp factor must be positive, got ", options.ramp_factor));
  }
  if (options.asset.empty()) {
    return absl::InvalidArgumentError("synthetic asset id is empty");
  }
  absl::StatusOr<ClipBounds> clip = ClipBounds::Symmetric(options.adtv);
  if (!clip.ok()) return clip.status();
  if (absl::Status s = options.quote.Validate(); !s.ok()) return s;
  absl::StatusOr<Date> start = ParseIsoDate(options.start_date);
  if (!start.ok()) return start.status();

  ScenarioSpec scenario;
  for (Date d : BusinessDays(*start, options.days)) {
    scenario.dates.push_back(FormatIsoDate(d));
  }
  AssetSeries asset;
  asset.id = options.asset;
  asset.clip = *clip;
  asset.quotes = QuoteSeries::Constant(options.quote, options.days);
  const double p0 = static_cast<double>(options.start_position);
  const double span = (options.ramp_factor - 1.0) * p0;
  for (int t = 0; t < options.days; ++t) {
    const Shares p = t == options.days - 1
                         ? RoundShares(options.ramp_factor * p0)
                         : RoundShares(p0 + span * t / (options.days - 1));
    asset.client.push_back(p);
    asset.hist.push_back(-p);
  }
  scenario.assets.push_back(std::move(asset));
  return scenario;
}

}  // namespace axedp
