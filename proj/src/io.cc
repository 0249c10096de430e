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

#include "axedp/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <system_error>
#include <utility>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "axedp/calendar.h"
#include "json.hpp"

namespace axedp {
namespace {

namespace fs = std::filesystem;

template <typename Value>
struct Observation {
  Date date;
  Value value;
};

template <typename Value>
struct AlignedGrid {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  std::vector<std::vector<Value>> series;
  std::int64_t filled = 0;
};

absl::Status LineError(absl::string_view source, int line,
                       absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat(source, ":", line, ": ", message));
}

// Reads `date,asset,<fields...>` rows and aligns them on the business-day
// grid. `parse_value` turns the remaining fields into a Value.
template <typename Value, typename ParseValue>
absl::StatusOr<AlignedGrid<Value>> ParseKeyedCsv(absl::string_view content,
                                                 absl::string_view source,
                                                 absl::string_view header,
                                                 std::size_t n_fields,
                                                 ParseValue parse_value) {
  std::vector<absl::string_view> lines = absl::StrSplit(content, '\n');
  while (!lines.empty() && absl::StripSuffix(lines.back(), "\r").empty()) {
    lines.pop_back();
  }
  if (lines.empty()) {
    return LineError(source, 1, absl::StrCat("missing header '", header, "'"));
  }
  if (absl::StripSuffix(lines[0], "\r") != header) {
    return LineError(source, 1,
                     absl::StrCat("header must be exactly '", header, "'"));
  }

  std::map<std::string, std::vector<Observation<Value>>> by_asset;
  std::set<Date> dates;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    const absl::string_view text = absl::StripSuffix(lines[i], "\r");
    std::vector<absl::string_view> fields = absl::StrSplit(text, ',');
    if (fields.size() != n_fields) {
      return LineError(source, line,
                       absl::StrCat("expected ", n_fields, " fields, got ",
                                    fields.size()));
    }
    absl::StatusOr<Date> date = ParseIsoDate(fields[0]);
    if (!date.ok()) return LineError(source, line, date.status().message());
    if (fields[1].empty()) return LineError(source, line, "empty asset");
    absl::StatusOr<Value> value =
        parse_value(std::span<const absl::string_view>(fields).subspan(2));
    if (!value.ok()) return LineError(source, line, value.status().message());

    std::vector<Observation<Value>>& obs = by_asset[std::string(fields[1])];
    if (!obs.empty() && obs.back().date >= *date) {
      const bool duplicate =
          std::any_of(obs.begin(), obs.end(), [&](const auto& o) {
            return o.date == *date;
          });
      return LineError(
          source, line,
          duplicate ? absl::StrCat("duplicate (date, asset) (", fields[0],
                                   ", ", fields[1], ")")
                    : absl::StrCat("dates for asset '", fields[1],
                                   "' are not increasing"));
    }
    obs.push_back({*date, *std::move(value)});
    dates.insert(*date);
  }

  AlignedGrid<Value> grid;
  if (dates.empty()) return grid;
  std::vector<Date> calendar =
      BusinessDaysBetween(*dates.begin(), *dates.rbegin());
  for (Date d : dates) {
    if (!IsWeekday(d)) calendar.push_back(d);
  }
  std::sort(calendar.begin(), calendar.end());
  calendar.erase(std::unique(calendar.begin(), calendar.end()),
                 calendar.end());
  for (Date d : calendar) grid.dates.push_back(FormatIsoDate(d));

  for (auto& [asset, obs] : by_asset) {
    if (obs.front().date != calendar.front()) {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ": asset '", asset, "' has no value on the first date ",
          grid.dates.front()));
    }
    std::vector<Value> series;
    series.reserve(calendar.size());
    std::size_t next = 0;
    for (Date d : calendar) {
      if (next < obs.size() && obs[next].date == d) {
        series.push_back(obs[next++].value);
      } else {
        series.push_back(series.back());
        ++grid.filled;
      }
    }
    grid.assets.push_back(asset);
    grid.series.push_back(std::move(series));
  }
  return grid;
}

absl::StatusOr<Shares> ParseShares(absl::string_view text) {
  Shares value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed integer quantity '", text, "'"));
  }
  return value;
}

absl::StatusOr<double> ParseNumber(absl::string_view text,
                                   absl::string_view what) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed ", what, " '", text, "'"));
  }
  return value;
}

template <typename Table>
std::optional<std::size_t> FindAsset(const Table& table,
                                     absl::string_view asset) {
  auto it = std::lower_bound(table.assets.begin(), table.assets.end(), asset);
  if (it == table.assets.end() || *it != asset) return std::nullopt;
  return static_cast<std::size_t>(it - table.assets.begin());
}

std::string ResolvePath(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

absl::StatusOr<bool> ParseBool(absl::string_view text) {
  bool value = false;
  if (!absl::SimpleAtob(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected a boolean, got '", text, "'"));
  }
  return value;
}

template <typename Int>
absl::StatusOr<Int> ParseInteger(absl::string_view text) {
  Int value{};
  if (!absl::SimpleAtoi(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected an integer, got '", text, "'"));
  }
  return value;
}

absl::StatusOr<std::vector<int>> ParseLagList(absl::string_view text) {
  std::vector<int> lags;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    absl::StatusOr<int> lag = ParseInteger<int>(absl::StripAsciiWhitespace(part));
    if (!lag.ok()) return lag.status();
    lags.push_back(*lag);
  }
  return lags;
}

std::string FormatPoint(const GridPoint& p) {
  return absl::StrCat(FormatDouble(p.epsilon), ",", p.horizon, ",", p.bucket);
}

}  // namespace

std::optional<std::size_t> AxeTable::AssetIndex(absl::string_view asset) const {
  return FindAsset(*this, asset);
}

std::optional<std::size_t> MarketTable::AssetIndex(
    absl::string_view asset) const {
  return FindAsset(*this, asset);
}

absl::StatusOr<AxeTable> ParseAxeCsv(absl::string_view content,
                                     absl::string_view source) {
  auto grid = ParseKeyedCsv<Shares>(
      content, source, kAxeCsvHeader, 3,
      [](std::span<const absl::string_view> f) { return ParseShares(f[0]); });
  if (!grid.ok()) return grid.status();
  AxeTable table;
  table.dates = std::move(grid->dates);
  table.assets = std::move(grid->assets);
  table.series = std::move(grid->series);
  table.filled = grid->filled;
  return table;
}

absl::StatusOr<AxeTable> ReadAxeCsv(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseAxeCsv(*content, path);
}

std::string FormatAxeCsv(const AxeTable& table) {
  std::string out = absl::StrCat(kAxeCsvHeader, "\n");
  for (std::size_t d = 0; d < table.dates.size(); ++d) {
    for (std::size_t a = 0; a < table.assets.size(); ++a) {
      absl::StrAppend(&out, table.dates[d], ",", table.assets[a], ",",
                      table.series[a][d], "\n");
    }
  }
  return out;
}

absl::Status WriteAxeCsv(const AxeTable& table, const std::string& path) {
  return WriteFile(path, FormatAxeCsv(table));
}

absl::StatusOr<MarketTable> ParseMarketCsv(absl::string_view content,
                                           absl::string_view source) {
  auto grid = ParseKeyedCsv<MarketQuote>(
      content, source, kMarketCsvHeader, 5,
      [](std::span<const absl::string_view> f) -> absl::StatusOr<MarketQuote> {
        absl::StatusOr<double> price = ParseNumber(f[0], "price");
        if (!price.ok()) return price.status();
        absl::StatusOr<double> funding = ParseNumber(f[1], "funding_rate");
        if (!funding.ok()) return funding.status();
        absl::StatusOr<double> borrow = ParseNumber(f[2], "borrow_rate");
        if (!borrow.ok()) return borrow.status();
        MarketQuote quote{*price, *funding, *borrow};
        if (absl::Status s = quote.Validate(); !s.ok()) return s;
        return quote;
      });
  if (!grid.ok()) return grid.status();
  MarketTable table;
  table.dates = std::move(grid->dates);
  table.assets = std::move(grid->assets);
  table.filled = grid->filled;
  for (const std::vector<MarketQuote>& series : grid->series) {
    QuoteSeries quotes;
    for (const MarketQuote& q : series) quotes.push_back(q);
    table.quotes.push_back(std::move(quotes));
  }
  return table;
}

absl::StatusOr<MarketTable> ReadMarketCsv(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return ParseMarketCsv(*content, path);
}

std::string FormatMarketCsv(const MarketTable& table) {
  std::string out = absl::StrCat(kMarketCsvHeader, "\n");
  for (std::size_t d = 0; d < table.dates.size(); ++d) {
    for (std::size_t a = 0; a < table.assets.size(); ++a) {
      const MarketQuote q = table.quotes[a].at(d);
      absl::StrAppend(&out, table.dates[d], ",", table.assets[a], ",",
                      FormatDouble(q.price), ",", FormatDouble(q.funding_rate),
                      ",", FormatDouble(q.borrow_rate), "\n");
    }
  }
  return out;
}

absl::StatusOr<ClipBounds> RunConfig::ClipFor(absl::string_view asset) const {
  auto it = adtv.find(std::string(asset));
  if (it != adtv.end()) return ClipBounds::Symmetric(it->second);
  if (adtv_default.has_value()) return ClipBounds::Symmetric(*adtv_default);
  return absl::InvalidArgumentError(
      absl::StrCat("no ADTV configured for asset '", asset, "'"));
}

absl::StatusOr<RunConfig> ParseRunConfig(absl::string_view content,
                                         const std::string& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(content)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config line ", e.line(), ": ", e.message()));
  }

  RunConfig config;
  SimConfig& sim = config.sim;
  DpParams& dp = sim.dp;
  for (const auto& [section, keys] : tree) {
    if (keys.empty() && !keys.data().empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config key '", section, "' outside any section"));
    }
    for (const auto& [key, node] : keys) {
      const std::string value = node.get_value<std::string>();
      const std::string where = absl::StrCat("[", section, "] ", key);
      absl::Status status = absl::OkStatus();
      auto set_double = [&](double& out) {
        if (!absl::SimpleAtod(value, &out)) {
          status = absl::InvalidArgumentError("expected a number");
        }
      };
      auto set_int = [&](int& out) {
        absl::StatusOr<int> v = ParseInteger<int>(value);
        if (v.ok()) out = *v; else status = v.status();
      };
      auto set_bool = [&](bool& out) {
        absl::StatusOr<bool> v = ParseBool(value);
        if (v.ok()) out = *v; else status = v.status();
      };
      bool known = true;
      if (section == "dp") {
        if (key == "epsilon") set_double(dp.epsilon);
        else if (key == "horizon") set_int(dp.horizon);
        else if (key == "bucket") set_int(dp.bucket);
        else if (key == "noise") set_bool(dp.noise_enabled);
        else if (key == "sensitivity") {
          absl::StatusOr<SensitivityMode> m = ParseSensitivityMode(value);
          if (m.ok()) dp.sensitivity = *m; else status = m.status();
        } else known = false;
      } else if (section == "sim") {
        if (key == "hit_ratio") set_double(sim.hit_ratio);
        else if (key == "holding_period") set_int(sim.holding_period);
        else if (key == "paths") set_int(sim.n_paths);
        else if (key == "threads") set_int(sim.threads);
        else if (key == "keep_paths") set_bool(sim.keep_paths);
        else if (key == "seed") {
          absl::StatusOr<std::uint64_t> v = ParseInteger<std::uint64_t>(value);
          if (v.ok()) sim.master_seed = *v; else status = v.status();
        } else if (key == "lags") {
          absl::StatusOr<std::vector<int>> v = ParseLagList(value);
          if (v.ok()) sim.lags = *v; else status = v.status();
        } else if (key == "strategy") {
          absl::StatusOr<Strategy> v = ParseStrategy(value);
          if (v.ok()) sim.strategy = *v; else status = v.status();
        } else known = false;
      } else if (section == "scenario") {
        if (key == "axe") config.axe_path = ResolvePath(base_dir, value);
        else if (key == "client") config.client_path = ResolvePath(base_dir, value);
        else if (key == "market") config.market_path = ResolvePath(base_dir, value);
        else if (key == "include_client") set_bool(config.include_client);
        else known = false;
      } else if (section == "adtv") {
        absl::StatusOr<Shares> v = ParseInteger<Shares>(value);
        if (!v.ok()) {
          status = v.status();
        } else if (*v < 0) {
          status = absl::InvalidArgumentError("ADTV must be non-negative");
        } else if (key == "default") {
          config.adtv_default = *v;
        } else {
          config.adtv[key] = *v;
        }
      } else if (section == "output") {
        if (key == "dir") config.output_dir = ResolvePath(base_dir, value);
        else known = false;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown config section [", section, "]"));
      }
      if (!known) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown config key ", where));
      }
      if (!status.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat(where, " = '", value, "': ", status.message()));
      }
    }
  }
  if (absl::Status s = sim.Validate(); !s.ok()) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", s.message()));
  }
  return config;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<RunConfig> config =
      ParseRunConfig(*content, fs::path(path).parent_path().string());
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path, ": ", config.status().message()));
  }
  for (const std::string* file :
       {&config->axe_path, &config->client_path, &config->market_path}) {
    if (!file->empty() && !fs::exists(*file)) {
      return absl::NotFoundError(
          absl::StrCat(path, ": referenced file ", *file, " does not exist"));
    }
  }
  return config;
}

std::string FormatRunConfig(const RunConfig& config) {
  const SimConfig& sim = config.sim;
  const DpParams& dp = sim.dp;
  std::string out;
  absl::StrAppend(&out, "[dp]\n", "epsilon = ", FormatDouble(dp.epsilon),
                  "\nhorizon = ", dp.horizon, "\nbucket = ", dp.bucket,
                  "\nsensitivity = ", SensitivityModeName(dp.sensitivity),
                  "\nnoise = ", dp.noise_enabled ? "true" : "false", "\n\n");
  absl::StrAppend(&out, "[sim]\n", "hit_ratio = ", FormatDouble(sim.hit_ratio),
                  "\nholding_period = ", sim.holding_period,
                  "\npaths = ", sim.n_paths, "\nseed = ", sim.master_seed,
                  "\nlags = ", absl::StrJoin(sim.lags, ","),
                  "\nstrategy = ", StrategyName(sim.strategy),
                  "\nthreads = ", sim.threads,
                  "\nkeep_paths = ", sim.keep_paths ? "true" : "false",
                  "\n\n");
  absl::StrAppend(&out, "[scenario]\n");
  if (!config.axe_path.empty()) {
    absl::StrAppend(&out, "axe = ", config.axe_path, "\n");
  }
  if (!config.client_path.empty()) {
    absl::StrAppend(&out, "client = ", config.client_path, "\n");
  }
  if (!config.market_path.empty()) {
    absl::StrAppend(&out, "market = ", config.market_path, "\n");
  }
  absl::StrAppend(&out, "include_client = ",
                  config.include_client ? "true" : "false", "\n\n[adtv]\n");
  if (config.adtv_default.has_value()) {
    absl::StrAppend(&out, "default = ", *config.adtv_default, "\n");
  }
  for (const auto& [asset, v] : config.adtv) {
    absl::StrAppend(&out, asset, " = ", v, "\n");
  }
  if (!config.output_dir.empty()) {
    absl::StrAppend(&out, "\n[output]\ndir = ", config.output_dir, "\n");
  }
  return out;
}

absl::StatusOr<ScenarioSpec> BuildScenario(const AxeTable& axe,
                                           const AxeTable* client,
                                           const MarketTable* market,
                                           const RunConfig& config,
                                           const MarketQuote& fallback_quote) {
  if (axe.assets.empty()) {
    return absl::InvalidArgumentError("axe file has no rows");
  }
  auto date_map = [](const std::vector<std::string>& dates) {
    std::map<absl::string_view, std::size_t> m;
    for (std::size_t i = 0; i < dates.size(); ++i) m[dates[i]] = i;
    return m;
  };
  auto align = [&](const std::vector<std::string>& dates,
                   absl::string_view what)
      -> absl::StatusOr<std::vector<std::size_t>> {
    const auto index = date_map(dates);
    std::vector<std::size_t> rows;
    rows.reserve(axe.dates.size());
    for (const std::string& d : axe.dates) {
      auto it = index.find(d);
      if (it == index.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat(what, " has no row for date ", d));
      }
      rows.push_back(it->second);
    }
    return rows;
  };

  std::vector<std::size_t> client_rows;
  if (client != nullptr) {
    absl::StatusOr<std::vector<std::size_t>> rows =
        align(client->dates, "client file");
    if (!rows.ok()) return rows.status();
    client_rows = *std::move(rows);
  }
  std::vector<std::size_t> market_rows;
  if (market != nullptr) {
    absl::StatusOr<std::vector<std::size_t>> rows =
        align(market->dates, "market file");
    if (!rows.ok()) return rows.status();
    market_rows = *std::move(rows);
  }

  ScenarioSpec scenario;
  scenario.dates = axe.dates;
  scenario.include_client = config.include_client;
  const std::size_t n = axe.dates.size();
  for (std::size_t a = 0; a < axe.assets.size(); ++a) {
    AssetSeries asset;
    asset.id = axe.assets[a];
    asset.hist = axe.series[a];
    if (client != nullptr) {
      asset.client.assign(n, 0);
      if (auto c = client->AssetIndex(asset.id)) {
        for (std::size_t t = 0; t < n; ++t) {
          asset.client[t] = client->series[*c][client_rows[t]];
        }
      }
    }
    std::optional<std::size_t> m =
        market != nullptr ? market->AssetIndex(asset.id) : std::nullopt;
    if (m.has_value()) {
      for (std::size_t t = 0; t < n; ++t) {
        asset.quotes.push_back(market->quotes[*m].at(market_rows[t]));
      }
    } else {
      asset.quotes = QuoteSeries::Constant(fallback_quote, n);
    }
    if (config.sim.strategy != Strategy::kNone || config.adtv_default ||
        config.adtv.count(asset.id) > 0) {
      absl::StatusOr<ClipBounds> clip = config.ClipFor(asset.id);
      if (!clip.ok()) return clip.status();
      asset.clip = *clip;
    }
    scenario.assets.push_back(std::move(asset));
  }
  if (absl::Status s = scenario.Validate(); !s.ok()) return s;
  return scenario;
}

absl::StatusOr<std::vector<int>> ParseLags(absl::string_view text) {
  absl::StatusOr<std::vector<int>> lags = ParseLagList(text);
  if (!lags.ok()) return lags.status();
  if (lags->empty()) return absl::InvalidArgumentError("empty lag list");
  for (int lag : *lags) {
    if (lag < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("lag must be at least 1, got ", lag));
    }
  }
  return lags;
}

std::string FormatDouble(double value) {
  char buf[400];
  const double magnitude = std::fabs(value);
  const bool fixed =
      magnitude == 0.0 || (magnitude >= 1e-4 && magnitude < 1e15);
  auto [ptr, ec] =
      fixed ? std::to_chars(buf, buf + sizeof(buf), value,
                            std::chars_format::fixed)
            : std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string FormatMetricsCsv(const MetricsReport& report) {
  std::string out = absl::StrCat(kMetricsCsvHeader, "\n");
  for (const MetricRow& r : report.rows) {
    absl::StrAppend(&out, FormatPoint(r.point), ",", r.scenario, ",", r.metric,
                    ",", r.lag, ",", FormatDouble(r.mean), ",",
                    FormatDouble(r.std_error), ",", r.n_paths, "\n");
  }
  return out;
}

std::string FormatHistogramsCsv(const MetricsReport& report) {
  std::string out = absl::StrCat(kHistogramsCsvHeader, "\n");
  for (const HistogramRow& h : report.histograms) {
    absl::StrAppend(&out, FormatPoint(h.point), ",", h.scenario, ",", h.metric,
                    ",", h.lag, ",", h.bin, ",", FormatDouble(h.lo), ",",
                    FormatDouble(h.hi), ",", h.count, "\n");
  }
  return out;
}

std::string FormatPathsCsv(const MetricsReport& report) {
  std::string out = absl::StrCat(kPathsCsvHeader, "\n");
  for (const PathRecord& p : report.paths) {
    absl::StrAppend(&out, FormatPoint(p.point), ",", p.scenario, ",", p.path,
                    ",", p.asset, ",", p.day, ",", p.date, ",", p.a_hist, ",",
                    p.client, ",", p.a_pre, ",", p.a_pub, ",");
    absl::StrAppend(&out, p.a_hit, ",", p.a_post, ",", FormatDouble(p.pnl),
                    ",", FormatDouble(p.over_axe), "\n");
  }
  return out;
}

std::string FormatSummaryJson(const MetricsReport& report) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  root["config"] = std::move(config);
  root["counts"] = {{"metrics", report.rows.size()},
                    {"histogram_bins", report.histograms.size()},
                    {"path_records", report.paths.size()}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const MetricRow& r : report.rows) {
    rows.push_back({{"epsilon", r.point.epsilon},
                    {"T", r.point.horizon},
                    {"B", r.point.bucket},
                    {"scenario", r.scenario},
                    {"metric", r.metric},
                    {"lag", r.lag},
                    {"mean", r.mean},
                    {"stderr", r.std_error},
                    {"n_paths", r.n_paths}});
  }
  root["metrics"] = std::move(rows);
  return root.dump(2) + "\n";
}

absl::Status WriteReport(const MetricsReport& report, const std::string& dir,
                         bool with_paths) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create directory ", dir, ": ", ec.message()));
  }
  const fs::path base(dir);
  if (absl::Status s =
          WriteFile((base / "metrics.csv").string(), FormatMetricsCsv(report));
      !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile((base / "histograms.csv").string(),
                                 FormatHistogramsCsv(report));
      !s.ok()) {
    return s;
  }
  if (with_paths) {
    if (absl::Status s =
            WriteFile((base / "paths.csv").string(), FormatPathsCsv(report));
        !s.ok()) {
      return s;
    }
  }
  return WriteFile((base / "summary.json").string(), FormatSummaryJson(report));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    return absl::NotFoundError(absl::StrCat(path, ": no such file"));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::UnavailableError(absl::StrCat(path, ": cannot open"));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return absl::UnavailableError(absl::StrCat(path, ": read error"));
  return buf.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(absl::StrCat(path, ": cannot open for writing"));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat(path, ": write error"));
  return absl::OkStatus();
}

}  // namespace axedp
