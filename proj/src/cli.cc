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

#include "axedp/cli.h"

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "axedp/io.h"
#include "axedp/kernels.h"
#include "axedp/simulator.h"

namespace axedp {
namespace {

namespace fs = std::filesystem;

// Flags shared by the commands that run the simulator.
struct SimFlags {
  std::string scenario_dir;
  std::string config_path;
  std::string out_dir;
  std::optional<int> paths;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<double> epsilon;
  std::optional<int> horizon;
  std::optional<int> bucket;
  std::optional<double> hit_ratio;
  std::optional<int> holding_period;
  std::optional<std::string> lags;
  std::optional<int> threads;
  std::optional<Shares> adtv;
  bool no_noise = false;
  bool keep_paths = false;
};

void AddDpFlags(CLI::App* app, SimFlags& f) {
  app->add_option("--epsilon", f.epsilon, "Privacy budget per period");
  app->add_option("--horizon", f.horizon, "Reset period T in days");
  app->add_option("--bucket", f.bucket, "Window bucket size B in days");
  app->add_option("--adtv", f.adtv,
                  "Default ADTV for assets without a configured one");
  app->add_flag("--no-noise", f.no_noise,
                "Disable noise (published series equals the clipped input)");
}

void AddSimFlags(CLI::App* app, SimFlags& f) {
  app->add_option("--scenario", f.scenario_dir,
                  "Scenario directory with axe.csv and optional client.csv, "
                  "market.csv, run.cfg");
  app->add_option("--config", f.config_path, "Run configuration (INI)");
  app->add_option("--out", f.out_dir, "Report output directory");
  app->add_option("--paths", f.paths, "Monte Carlo paths");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--strategy", f.strategy,
                  "Publication strategy: none|window|binary|naive|simple");
  app->add_option("--hit-ratio", f.hit_ratio, "Executed fraction h of the axe");
  app->add_option("--holding-period", f.holding_period,
                  "Days an executed hit stays on the book");
  app->add_option("--lags", f.lags, "Leakage lags, e.g. 1,5,10");
  app->add_option("--threads", f.threads, "Worker threads (0: all cores)");
  app->add_flag("--keep-paths", f.keep_paths, "Also write paths.csv");
  AddDpFlags(app, f);
}

absl::Status ApplyOverrides(const SimFlags& f, RunConfig& config) {
  SimConfig& sim = config.sim;
  if (f.paths) sim.n_paths = *f.paths;
  if (f.seed) sim.master_seed = *f.seed;
  if (f.strategy) {
    absl::StatusOr<Strategy> s = ParseStrategy(*f.strategy);
    if (!s.ok()) return s.status();
    sim.strategy = *s;
  }
  if (f.epsilon) sim.dp.epsilon = *f.epsilon;
  if (f.horizon) sim.dp.horizon = *f.horizon;
  if (f.bucket) sim.dp.bucket = *f.bucket;
  if (f.hit_ratio) sim.hit_ratio = *f.hit_ratio;
  if (f.holding_period) sim.holding_period = *f.holding_period;
  if (f.lags) {
    absl::StatusOr<std::vector<int>> lags = ParseLags(*f.lags);
    if (!lags.ok()) return lags.status();
    sim.lags = *lags;
  }
  if (f.threads) sim.threads = *f.threads;
  if (f.adtv) {
    if (*f.adtv < 0) {
      return absl::InvalidArgumentError("--adtv must be non-negative");
    }
    config.adtv_default = *f.adtv;
  }
  if (f.no_noise) sim.dp.noise_enabled = false;
  if (f.keep_paths) sim.keep_paths = true;
  if (!f.out_dir.empty()) config.output_dir = f.out_dir;
  return absl::OkStatus();
}

absl::StatusOr<RunConfig> LoadConfig(const SimFlags& f) {
  std::string path = f.config_path;
  if (path.empty() && !f.scenario_dir.empty()) {
    const fs::path candidate = fs::path(f.scenario_dir) / "run.cfg";
    if (fs::exists(candidate)) path = candidate.string();
  }
  RunConfig config;
  if (!path.empty()) {
    absl::StatusOr<RunConfig> loaded = LoadRunConfig(path);
    if (!loaded.ok()) return loaded.status();
    config = *std::move(loaded);
  }
  if (!f.scenario_dir.empty()) {
    const fs::path dir(f.scenario_dir);
    config.axe_path = (dir / "axe.csv").string();
    config.client_path.clear();
    config.market_path.clear();
    if (fs::exists(dir / "client.csv")) {
      config.client_path = (dir / "client.csv").string();
    }
    if (fs::exists(dir / "market.csv")) {
      config.market_path = (dir / "market.csv").string();
    }
  }
  if (absl::Status s = ApplyOverrides(f, config); !s.ok()) return s;
  if (absl::Status s = config.sim.Validate(); !s.ok()) return s;
  return config;
}

absl::StatusOr<ScenarioSpec> LoadScenario(const RunConfig& config,
                                          std::ostream& err) {
  if (config.axe_path.empty()) {
    return absl::InvalidArgumentError(
        "no scenario: pass --scenario or set [scenario] axe in --config");
  }
  absl::StatusOr<AxeTable> axe = ReadAxeCsv(config.axe_path);
  if (!axe.ok()) return axe.status();
  std::int64_t filled = axe->filled;
  std::optional<AxeTable> client;
  if (!config.client_path.empty()) {
    absl::StatusOr<AxeTable> c = ReadAxeCsv(config.client_path);
    if (!c.ok()) return c.status();
    filled += c->filled;
    client = *std::move(c);
  }
  std::optional<MarketTable> market;
  if (!config.market_path.empty()) {
    absl::StatusOr<MarketTable> m = ReadMarketCsv(config.market_path);
    if (!m.ok()) return m.status();
    filled += m->filled;
    market = *std::move(m);
  }
  if (filled > 0) {
    err << "warning: forward-filled " << filled << " missing day(s)\n";
  }
  return BuildScenario(*axe, client ? &*client : nullptr,
                       market ? &*market : nullptr, config, DefaultQuote());
}

void EchoConfig(absl::string_view command, const RunConfig& config,
                bool compare, MetricsReport& report) {
  const SimConfig& sim = config.sim;
  report.config = {
      {"command", std::string(command)},
      {"strategy", std::string(StrategyName(sim.strategy))},
      {"epsilon", FormatDouble(sim.dp.epsilon)},
      {"T", absl::StrCat(sim.dp.horizon)},
      {"B", absl::StrCat(sim.dp.bucket)},
      {"sensitivity", std::string(SensitivityModeName(sim.dp.sensitivity))},
      {"noise", sim.dp.noise_enabled ? "true" : "false"},
      {"hit_ratio", FormatDouble(sim.hit_ratio)},
      {"holding_period", absl::StrCat(sim.holding_period)},
      {"paths", absl::StrCat(sim.n_paths)},
      {"seed", absl::StrCat(sim.master_seed)},
      {"lags", absl::StrJoin(sim.lags, ",")},
      {"include_client", config.include_client ? "true" : "false"},
      {"compare_client", compare ? "true" : "false"},
      {"axe", config.axe_path},
      {"client", config.client_path},
      {"market", config.market_path},
  };
}

void PrintRows(const MetricsReport& report, std::ostream& out) {
  for (const MetricRow& r : report.rows) {
    out << "eps=" << FormatDouble(r.point.epsilon) << " T=" << r.point.horizon
        << " B=" << r.point.bucket << " " << r.scenario << " " << r.metric;
    if (r.lag > 0) out << "@" << r.lag;
    out << " mean=" << FormatDouble(r.mean)
        << " se=" << FormatDouble(r.std_error) << " n=" << r.n_paths << "\n";
  }
}

absl::Status FinishReport(const MetricsReport& report, const RunConfig& config,
                          std::ostream& out) {
  if (config.output_dir.empty()) {
    return absl::InvalidArgumentError(
        "no output directory: pass --out or set [output] dir");
  }
  if (absl::Status s =
          WriteReport(report, config.output_dir, config.sim.keep_paths);
      !s.ok()) {
    return s;
  }
  PrintRows(report, out);
  out << "wrote " << report.rows.size() << " metric rows to "
      << config.output_dir << "\n";
  return absl::OkStatus();
}

absl::Status RunSimulate(const SimFlags& f, bool compare, std::ostream& out,
                         std::ostream& err) {
  absl::StatusOr<RunConfig> config = LoadConfig(f);
  if (!config.ok()) return config.status();
  absl::StatusOr<ScenarioSpec> scenario = LoadScenario(*config, err);
  if (!scenario.ok()) return scenario.status();
  absl::StatusOr<MetricsReport> report =
      compare ? CompareWithWithoutClient(*scenario, config->sim)
              : RunMonteCarlo(*scenario, config->sim);
  if (!report.ok()) return report.status();
  EchoConfig("simulate", *config, compare, *report);
  return FinishReport(*report, *config, out);
}

absl::Status RunSweep(const SimFlags& f, const std::string& grid_spec,
                      bool no_compare, std::ostream& out, std::ostream& err) {
  absl::StatusOr<RunConfig> config = LoadConfig(f);
  if (!config.ok()) return config.status();
  absl::StatusOr<std::vector<GridPoint>> grid =
      ParseGrid(grid_spec, config->sim.dp);
  if (!grid.ok()) return grid.status();
  absl::StatusOr<ScenarioSpec> scenario = LoadScenario(*config, err);
  if (!scenario.ok()) return scenario.status();
  const bool compare = !no_compare && scenario->HasClient();
  absl::StatusOr<MetricsReport> report =
      Sweep(*scenario, *grid, config->sim, compare);
  if (!report.ok()) return report.status();
  EchoConfig("sweep", *config, compare, *report);
  report->config.emplace_back("grid", grid_spec);
  return FinishReport(*report, *config, out);
}

struct ObfuscateFlags {
  std::string input;
  std::string output;
  std::string config_path;
  std::string mechanism = "window";
  std::uint64_t seed = 0;
  SimFlags dp;
};

absl::Status RunObfuscate(const ObfuscateFlags& f, std::ostream& out,
                          std::ostream& err) {
  absl::StatusOr<Mechanism> mechanism = ParseMechanism(f.mechanism);
  if (!mechanism.ok()) return mechanism.status();
  RunConfig config;
  if (!f.config_path.empty()) {
    absl::StatusOr<RunConfig> loaded = LoadRunConfig(f.config_path);
    if (!loaded.ok()) return loaded.status();
    config = *std::move(loaded);
  }
  if (absl::Status s = ApplyOverrides(f.dp, config); !s.ok()) return s;
  absl::StatusOr<AxeTable> input = ReadAxeCsv(f.input);
  if (!input.ok()) return input.status();
  if (input->filled > 0) {
    err << "warning: forward-filled " << input->filled << " missing day(s)\n";
  }

  AxeTable published;
  published.dates = input->dates;
  published.assets = input->assets;
  for (std::size_t a = 0; a < input->assets.size(); ++a) {
    const std::string& asset = input->assets[a];
    absl::StatusOr<ClipBounds> clip = config.ClipFor(asset);
    if (!clip.ok()) return clip.status();
    DpParams params = config.sim.dp;
    params.clip = *clip;
    absl::StatusOr<DeltaStream> stream = SplitStream(input->series[a], *clip);
    if (!stream.ok()) return stream.status();
    RngHandle rng(f.seed, DeriveStreamId(f.seed, a, 0));
    absl::StatusOr<std::vector<Shares>> series =
        PublishSeries(*stream, params, *mechanism, rng);
    if (!series.ok()) {
      return absl::Status(series.status().code(),
                          absl::StrCat("asset '", asset, "': ",
                                       series.status().message()));
    }
    published.series.push_back(*std::move(series));
    out << asset << ": days=" << input->dates.size()
        << " mechanism=" << MechanismName(*mechanism)
        << " eps=" << FormatDouble(params.epsilon) << " T=" << params.horizon
        << " B=" << params.bucket << " adtv=" << clip->hi()
        << (params.noise_enabled ? "" : " noise=off") << "\n";
  }
  return WriteAxeCsv(published, f.output);
}

struct SynthFlags {
  SynthOptions options;
  std::string out_dir;
};

absl::Status RunSynth(const SynthFlags& f, std::ostream& out) {
  absl::StatusOr<ScenarioSpec> scenario = SynthConcentratedScenario(f.options);
  if (!scenario.ok()) return scenario.status();
  std::error_code ec;
  fs::create_directories(f.out_dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create directory ", f.out_dir, ": ", ec.message()));
  }
  const AssetSeries& asset = scenario->assets.front();
  AxeTable axe;
  axe.dates = scenario->dates;
  axe.assets = {asset.id};
  axe.series = {asset.hist};
  AxeTable client = axe;
  client.series = {asset.client};
  const fs::path dir(f.out_dir);
  if (absl::Status s = WriteAxeCsv(axe, (dir / "axe.csv").string()); !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteAxeCsv(client, (dir / "client.csv").string());
      !s.ok()) {
    return s;
  }
  RunConfig config;
  config.axe_path = "axe.csv";
  config.client_path = "client.csv";
  config.adtv_default = f.options.adtv;
  if (absl::Status s =
          WriteFile((dir / "run.cfg").string(), FormatRunConfig(config));
      !s.ok()) {
    return s;
  }
  out << "wrote " << scenario->days() << " days for " << asset.id
      << " (client " << asset.client.front() << " -> " << asset.client.back()
      << ") to " << f.out_dir << "\n";
  return absl::OkStatus();
}

struct MetricsFlags {
  std::string truth;
  std::string published;
  std::string client;
  std::string market;
  std::string lags = "1,5,10";
  std::string out_dir;
  double epsilon = 0.0;
  int horizon = 0;
  int bucket = 0;
};

absl::Status RunMetrics(const MetricsFlags& f, std::ostream& out) {
  absl::StatusOr<std::vector<int>> lags = ParseLags(f.lags);
  if (!lags.ok()) return lags.status();
  absl::StatusOr<AxeTable> truth = ReadAxeCsv(f.truth);
  if (!truth.ok()) return truth.status();
  absl::StatusOr<AxeTable> published = ReadAxeCsv(f.published);
  if (!published.ok()) return published.status();
  if (published->dates != truth->dates || published->assets != truth->assets) {
    return absl::InvalidArgumentError(
        "published and true files must cover the same dates and assets");
  }
  RunConfig config;
  config.sim.strategy = Strategy::kNone;
  std::optional<AxeTable> client;
  if (!f.client.empty()) {
    absl::StatusOr<AxeTable> c = ReadAxeCsv(f.client);
    if (!c.ok()) return c.status();
    client = *std::move(c);
  }
  std::optional<MarketTable> market;
  if (!f.market.empty()) {
    absl::StatusOr<MarketTable> m = ReadMarketCsv(f.market);
    if (!m.ok()) return m.status();
    market = *std::move(m);
  }
  absl::StatusOr<ScenarioSpec> scenario =
      BuildScenario(*truth, client ? &*client : nullptr,
                    market ? &*market : nullptr, config, DefaultQuote());
  if (!scenario.ok()) return scenario.status();
  if (absl::Status s = ValidateLags(*lags, scenario->days()); !s.ok()) return s;

  std::vector<kernels::LeakCount> leaks(lags->size());
  std::int64_t over_days = 0;
  std::int64_t total_days = 0;
  double cost = 0.0;
  for (std::size_t a = 0; a < scenario->assets.size(); ++a) {
    const AssetSeries& asset = scenario->assets[a];
    if (absl::Status s = asset.quotes.ValidatePositiveRates(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("asset '", asset.id, "': ", s.message()));
    }
    const std::vector<Shares>& pub = published->series[a];
    std::vector<double> pub_d(pub.begin(), pub.end());
    std::vector<double> true_d(asset.hist.begin(), asset.hist.end());
    std::vector<double> quantity(pub.size());
    kernels::OverAxeQuantity(pub_d, true_d, asset.quotes.columns(), quantity);
    double asset_cost = 0.0;
    for (std::size_t t = 0; t < quantity.size(); ++t) {
      if (quantity[t] > 0.0) ++over_days;
      asset_cost +=
          OverAxeCostFromQuantity(quantity[t], true_d[t], asset.quotes.at(t));
    }
    cost += asset_cost / static_cast<double>(quantity.size());
    total_days += static_cast<std::int64_t>(quantity.size());
    if (!asset.client.empty()) {
      for (std::size_t k = 0; k < lags->size(); ++k) {
        absl::StatusOr<kernels::LeakCount> c =
            CountLeakage(asset.client, pub, (*lags)[k]);
        if (!c.ok()) return c.status();
        leaks[k].leaks += c->leaks;
        leaks[k].eligible += c->eligible;
      }
    }
  }

  MetricsReport report;
  const GridPoint point{f.epsilon, f.horizon, f.bucket};
  auto add = [&](std::string metric, int lag, double value) {
    report.rows.push_back({point, "observed", std::move(metric), lag, value,
                           0.0, 1});
  };
  if (client) {
    for (std::size_t k = 0; k < lags->size(); ++k) {
      add("lp", (*lags)[k], LeakRatio(leaks[k]));
    }
  }
  add("oa_freq", 0,
      static_cast<double>(over_days) / static_cast<double>(total_days));
  add("oa_cost", 0, cost / static_cast<double>(scenario->assets.size()));
  report.config = {{"command", "metrics"},
                   {"truth", f.truth},
                   {"published", f.published},
                   {"client", f.client},
                   {"market", f.market},
                   {"lags", absl::StrJoin(*lags, ",")}};
  if (absl::Status s = WriteReport(report, f.out_dir, false); !s.ok()) return s;
  PrintRows(report, out);
  return absl::OkStatus();
}

int Report(const absl::Status& status, std::ostream& err) {
  if (!status.ok()) err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kPermissionDenied:
    case absl::StatusCode::kDataLoss:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

absl::StatusOr<std::vector<GridPoint>> ParseGrid(absl::string_view spec,
                                                 const DpParams& defaults) {
  std::vector<double> eps = {defaults.epsilon};
  std::vector<int> horizons = {defaults.horizon};
  std::vector<int> buckets = {defaults.bucket};
  std::map<std::string, bool> seen;
  if (absl::StripAsciiWhitespace(spec).empty()) {
    return absl::InvalidArgumentError("empty grid");
  }
  for (absl::string_view dim : absl::StrSplit(spec, ';')) {
    if (absl::StripAsciiWhitespace(dim).empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("empty dimension in grid '", spec, "'"));
    }
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(dim, absl::MaxSplits('=', 1));
    const std::string key(absl::StripAsciiWhitespace(kv.first));
    const absl::string_view values = absl::StripAsciiWhitespace(kv.second);
    if (dim.find('=') == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid dimension '", dim, "' has no '='"));
    }
    const std::string name = key == "epsilon" ? "eps" : key;
    if (name != "eps" && name != "T" && name != "B") {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown grid dimension '", key, "' (eps, T, B)"));
    }
    if (seen[name]) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid dimension '", key, "' given twice"));
    }
    seen[name] = true;
    if (values.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("grid dimension '", key, "' has no values"));
    }
    std::vector<double> parsed;
    for (absl::string_view v : absl::StrSplit(values, ',')) {
      v = absl::StripAsciiWhitespace(v);
      double x = 0.0;
      if (v.empty() || !absl::SimpleAtod(v, &x) || !std::isfinite(x)) {
        return absl::InvalidArgumentError(
            absl::StrCat("grid dimension '", key, "': bad value '", v, "'"));
      }
      if (name == "eps" && !(x > 0.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("grid epsilon must be positive, got ", v));
      }
      if (name != "eps" && (x != std::floor(x) || x < 1)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "grid dimension '", key, "' needs positive integers, got ", v));
      }
      parsed.push_back(x);
    }
    if (name == "eps") {
      eps = parsed;
    } else {
      std::vector<int>& target = name == "T" ? horizons : buckets;
      target.clear();
      for (double x : parsed) target.push_back(static_cast<int>(x));
    }
  }
  if (seen.empty()) return absl::InvalidArgumentError("empty grid");
  std::vector<GridPoint> grid;
  for (double e : eps) {
    for (int t : horizons) {
      for (int b : buckets) grid.push_back({e, t, b});
    }
  }
  return grid;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private axe publication and simulation",
               "axedp"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);

  ObfuscateFlags obf;
  CLI::App* obfuscate =
      app.add_subcommand("obfuscate", "Publish a privatized axe series");
  obfuscate->add_option("--input", obf.input, "Axe CSV (date,asset,quantity)")
      ->required();
  obfuscate->add_option("--output", obf.output, "Published CSV to write")
      ->required();
  obfuscate->add_option("--config", obf.config_path,
                        "Run configuration (INI) with [dp] and [adtv]");
  obfuscate->add_option("--mechanism", obf.mechanism,
                        "window|binary|naive|simple")
      ->capture_default_str();
  obfuscate->add_option("--seed", obf.seed, "Random seed")
      ->capture_default_str();
  AddDpFlags(obfuscate, obf.dp);

  SimFlags sim;
  bool compare = false;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the Monte Carlo axe simulation");
  AddSimFlags(simulate, sim);
  simulate->add_flag("--compare-client", compare,
                     "Compare publication with and without the client");

  SimFlags sweep_flags;
  std::string grid = std::string(kDefaultGrid);
  bool no_compare = false;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Simulate over a grid of (eps, T, B)");
  AddSimFlags(sweep, sweep_flags);
  sweep->add_option("--grid", grid, "Grid, e.g. \"eps=0.1,0.3;T=30;B=10,20\"")
      ->capture_default_str();
  sweep->add_flag("--no-compare", no_compare,
                  "Skip the with/without client comparison");

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand(
      "synth", "Write a concentrated-client scenario (axe.csv, client.csv)");
  synth->add_option("--days", synth_flags.options.days, "Business days")
      ->capture_default_str();
  synth->add_option("--start", synth_flags.options.start_position,
                    "Initial client position")
      ->capture_default_str();
  synth->add_option("--ramp", synth_flags.options.ramp_factor,
                    "Final position as a multiple of the initial one")
      ->capture_default_str();
  synth->add_option("--adtv", synth_flags.options.adtv,
                    "ADTV written to run.cfg")
      ->capture_default_str();
  synth->add_option("--start-date", synth_flags.options.start_date,
                    "First date (YYYY-MM-DD)")
      ->capture_default_str();
  synth->add_option("--asset", synth_flags.options.asset, "Asset id")
      ->capture_default_str();
  synth->add_option("--out", synth_flags.out_dir, "Scenario directory")
      ->required();

  MetricsFlags metrics_flags;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "Leakage and over-axe metrics of a published series");
  metrics->add_option("--truth", metrics_flags.truth, "True axe CSV")
      ->required();
  metrics->add_option("--published", metrics_flags.published,
                      "Published axe CSV")
      ->required();
  metrics->add_option("--client", metrics_flags.client, "Client position CSV");
  metrics->add_option("--market", metrics_flags.market, "Market quote CSV");
  metrics->add_option("--lags", metrics_flags.lags, "Leakage lags")
      ->capture_default_str();
  metrics->add_option("--epsilon", metrics_flags.epsilon,
                      "Epsilon label for the report rows");
  metrics->add_option("--horizon", metrics_flags.horizon,
                      "T label for the report rows");
  metrics->add_option("--bucket", metrics_flags.bucket,
                      "B label for the report rows");
  metrics->add_option("--out", metrics_flags.out_dir, "Report directory")
      ->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("axedp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const CLI::App* target = &app;
    for (const CLI::App* sub : app.get_subcommands()) target = sub;
    const int code = target->exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (obfuscate->parsed()) return Report(RunObfuscate(obf, out, err), err);
  if (simulate->parsed()) {
    return Report(RunSimulate(sim, compare, out, err), err);
  }
  if (sweep->parsed()) {
    return Report(RunSweep(sweep_flags, grid, no_compare, out, err), err);
  }
  if (synth->parsed()) return Report(RunSynth(synth_flags, out), err);
  if (metrics->parsed()) return Report(RunMetrics(metrics_flags, out), err);
  return kExitInvalid;
}

}  // namespace axedp
