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
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "axedp/calendar.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "testing/generators.h"

namespace axedp {
namespace {

using ::testing::HasSubstr;

TEST(AxeCsvTest, SingleAssetThreeRows) {
  const AxeTable t = *ParseAxeCsv(
      "date,asset,quantity\n2024-01-02,X,10\n2024-01-03,X,13\n2024-01-04,X,-11\n");
  ASSERT_EQ(t.assets, std::vector<std::string>{"X"});
  EXPECT_EQ(t.series[0], (std::vector<Shares>{10, 13, -11}));
  EXPECT_EQ(t.dates.size(), 3u);
  EXPECT_EQ(t.filled, 0);
}

TEST(AxeCsvTest, DuplicateKeyNamesTheLine) {
  const absl::StatusOr<AxeTable> t = ParseAxeCsv(
      "date,asset,quantity\n2024-01-02,X,1\n2024-01-03,X,2\n2024-01-03,X,3\n",
      "axe.csv");
  ASSERT_FALSE(t.ok());
  EXPECT_EQ(t.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(t.status().message()), HasSubstr("axe.csv:4:"));
  EXPECT_THAT(std::string(t.status().message()), HasSubstr("duplicate"));
}

TEST(AxeCsvTest, BusinessDayGapIsForwardFilled) {
  const AxeTable t = *ParseAxeCsv(
      "date,asset,quantity\n2024-01-04,X,5\n2024-01-08,X,9\n"
      "2024-01-04,Y,1\n2024-01-05,Y,2\n2024-01-08,Y,3\n");
  ASSERT_EQ(t.dates,
            (std::vector<std::string>{"2024-01-04", "2024-01-05", "2024-01-08"}));
  EXPECT_EQ(t.filled, 1);
  EXPECT_EQ(t.series[*t.AssetIndex("X")], (std::vector<Shares>{5, 5, 9}));
  EXPECT_EQ(t.series[*t.AssetIndex("Y")], (std::vector<Shares>{1, 2, 3}));
  EXPECT_FALSE(t.AssetIndex("Z").has_value());
}

TEST(AxeCsvTest, MalformedInputs) {
  struct Case {
    const char* content;
    const char* fragment;
  };
  const Case cases[] = {
      {"", ":1:"},
      {"date,asset,qty\n", ":1:"},
      {"date,asset,quantity\n2024-01-02,X\n", ":2:"},
      {"date,asset,quantity\n2024-01-02,X,1.5\n", ":2:"},
      {"date,asset,quantity\n2024-01-02,X,1\n2024-13-02,X,1\n", ":3:"},
      {"date,asset,quantity\n2024-01-02,,1\n", ":2:"},
      {"date,asset,quantity\n2024-01-03,X,1\n2024-01-02,X,1\n", ":3:"},
      {"date,asset,quantity\n2024-01-02,X,1\n2024-01-03,Y,1\n", "first date"},
  };
  for (const Case& c : cases) {
    const absl::StatusOr<AxeTable> t = ParseAxeCsv(c.content, "in");
    ASSERT_FALSE(t.ok()) << c.content;
    EXPECT_THAT(std::string(t.status().message()), HasSubstr(c.fragment))
        << c.content;
  }
}

TEST(AxeCsvTest, AcceptsCrLfAndTrailingBlankLines) {
  const AxeTable t =
      *ParseAxeCsv("date,asset,quantity\r\n2024-01-02,X,7\r\n\r\n\n");
  EXPECT_EQ(t.series[0], std::vector<Shares>{7});
}

TEST(AxeCsvTest, HeaderOnlyIsEmpty) {
  const AxeTable t = *ParseAxeCsv("date,asset,quantity\n");
  EXPECT_TRUE(t.assets.empty());
  EXPECT_TRUE(t.dates.empty());
}

TEST(AxeCsvTest, WriteReadRoundTrip) {
  const std::string dir = test::ScratchDir("axe_round_trip");
  test::ForAll(30, 81, [&](test::Gen& g, int c) {
    AxeTable t;
    const std::vector<Date> days =
        BusinessDays(*ParseIsoDate("2023-03-01"), static_cast<int>(g.Int(1, 40)));
    for (Date d : days) t.dates.push_back(FormatIsoDate(d));
    const int n_assets = static_cast<int>(g.Int(1, 4));
    for (int a = 0; a < n_assets; ++a) {
      t.assets.push_back("A" + std::to_string(a));
      t.series.push_back(g.Levels(days.size(), 100000, 4000000000LL));
    }
    const std::string path = dir + "/axe" + std::to_string(c) + ".csv";
    ASSERT_TRUE(WriteAxeCsv(t, path).ok());
    const AxeTable back = *ReadAxeCsv(path);
    EXPECT_EQ(back.dates, t.dates);
    EXPECT_EQ(back.assets, t.assets);
    EXPECT_EQ(back.series, t.series);
    EXPECT_EQ(back.filled, 0);
  });
}

TEST(MarketCsvTest, ValidRowVerbatim) {
  const MarketTable t = *ParseMarketCsv(
      "date,asset,price,funding_rate,borrow_rate\n"
      "2024-01-02,X,12.5,0.0001,0.00005\n");
  const MarketQuote q = t.quotes[0].at(0);
  EXPECT_DOUBLE_EQ(q.price, 12.5);
  EXPECT_DOUBLE_EQ(q.funding_rate, 0.0001);
  EXPECT_DOUBLE_EQ(q.borrow_rate, 0.00005);
}

TEST(MarketCsvTest, NonPositivePriceIsError) {
  for (const char* price : {"0", "-3"}) {
    const absl::StatusOr<MarketTable> t = ParseMarketCsv(
        std::string("date,asset,price,funding_rate,borrow_rate\n2024-01-02,X,") +
            price + ",0.01,0.01\n",
        "m.csv");
    ASSERT_FALSE(t.ok());
    EXPECT_THAT(std::string(t.status().message()), HasSubstr("m.csv:2:"));
  }
}

TEST(MarketCsvTest, ZeroRateAcceptedAtLoad) {
  const MarketTable t = *ParseMarketCsv(
      "date,asset,price,funding_rate,borrow_rate\n2024-01-02,X,10,0,0.01\n");
  EXPECT_TRUE(t.quotes[0].Validate().ok());
  EXPECT_FALSE(t.quotes[0].ValidatePositiveRates().ok());
}

TEST(MarketCsvTest, FormatRoundTrip) {
  const std::string text =
      "date,asset,price,funding_rate,borrow_rate\n"
      "2024-01-02,X,10,7.936507936507937e-05,3.968253968253968e-05\n"
      "2024-01-03,X,10.25,0.0001,0.0002\n";
  EXPECT_EQ(FormatMarketCsv(*ParseMarketCsv(text)), text);
}

TEST(RunConfigTest, ParsesAllSections) {
  const RunConfig c = *ParseRunConfig(
      "[dp]\nepsilon = 0.5\nhorizon = 20\nbucket = 5\nsensitivity = adaptive\n"
      "noise = false\n"
      "[sim]\nhit_ratio = 0.1\nholding_period = 3\npaths = 7\nseed = 99\n"
      "lags = 1,2\nstrategy = binary\nthreads = 2\nkeep_paths = true\n"
      "[scenario]\naxe = a.csv\nclient = /abs/c.csv\ninclude_client = false\n"
      "[adtv]\ndefault = 500\nXYZ = 1000\n"
      "[output]\ndir = out\n",
      "/base");
  EXPECT_DOUBLE_EQ(c.sim.dp.epsilon, 0.5);
  EXPECT_EQ(c.sim.dp.horizon, 20);
  EXPECT_EQ(c.sim.dp.bucket, 5);
  EXPECT_EQ(c.sim.dp.sensitivity, SensitivityMode::kAdaptive);
  EXPECT_FALSE(c.sim.dp.noise_enabled);
  EXPECT_DOUBLE_EQ(c.sim.hit_ratio, 0.1);
  EXPECT_EQ(c.sim.holding_period, 3);
  EXPECT_EQ(c.sim.n_paths, 7);
  EXPECT_EQ(c.sim.master_seed, 99u);
  EXPECT_EQ(c.sim.lags, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.sim.strategy, Strategy::kBinary);
  EXPECT_EQ(c.sim.threads, 2);
  EXPECT_TRUE(c.sim.keep_paths);
  EXPECT_EQ(c.axe_path, "/base/a.csv");
  EXPECT_EQ(c.client_path, "/abs/c.csv");
  EXPECT_FALSE(c.include_client);
  EXPECT_EQ(c.output_dir, "/base/out");
  EXPECT_EQ(c.ClipFor("XYZ")->hi(), 1000);
  EXPECT_EQ(c.ClipFor("OTHER")->lo(), -500);
}

TEST(RunConfigTest, Errors) {
  for (const char* text :
       {"[bogus]\nx = 1\n", "[dp]\nunknown = 1\n", "[dp]\nepsilon = abc\n",
        "[dp]\nepsilon = -1\n", "[sim]\nstrategy = magic\n",
        "[adtv]\nX = -5\n", "[sim]\nhit_ratio = 2\n", "[dp\n"}) {
    EXPECT_EQ(ParseRunConfig(text, "").status().code(),
              absl::StatusCode::kInvalidArgument)
        << text;
  }
}

TEST(RunConfigTest, ClipNeedsAdtv) {
  const RunConfig c = *ParseRunConfig("[adtv]\nA = 10\n", "");
  EXPECT_TRUE(c.ClipFor("A").ok());
  EXPECT_FALSE(c.ClipFor("B").ok());
}

TEST(RunConfigTest, FormatParseRoundTrip) {
  RunConfig c;
  c.sim.dp.epsilon = 0.9;
  c.sim.dp.horizon = 60;
  c.sim.dp.bucket = 15;
  c.sim.n_paths = 3;
  c.sim.lags = {2, 4};
  c.sim.strategy = Strategy::kNaive;
  c.axe_path = "/data/axe.csv";
  c.include_client = false;
  c.adtv_default = 123;
  c.adtv["Q"] = 77;
  const RunConfig back = *ParseRunConfig(FormatRunConfig(c), "/elsewhere");
  EXPECT_EQ(FormatRunConfig(back), FormatRunConfig(c));
}

TEST(RunConfigTest, LoadChecksReferencedFiles) {
  const std::string dir = test::ScratchDir("load_config");
  ASSERT_TRUE(WriteFile(dir + "/run.cfg", "[scenario]\naxe = missing.csv\n").ok());
  EXPECT_EQ(LoadRunConfig(dir + "/run.cfg").status().code(),
            absl::StatusCode::kNotFound);
  ASSERT_TRUE(WriteFile(dir + "/missing.csv", "date,asset,quantity\n").ok());
  EXPECT_TRUE(LoadRunConfig(dir + "/run.cfg").ok());
  EXPECT_EQ(LoadRunConfig(dir + "/nope.cfg").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(BuildScenarioTest, AlignsClientAndMarket) {
  const AxeTable axe = *ParseAxeCsv(
      "date,asset,quantity\n2024-01-02,A,-5\n2024-01-03,A,-8\n"
      "2024-01-02,B,4\n2024-01-03,B,6\n");
  const AxeTable client = *ParseAxeCsv(
      "date,asset,quantity\n2024-01-01,A,0\n2024-01-02,A,5\n2024-01-03,A,8\n");
  const MarketTable market = *ParseMarketCsv(
      "date,asset,price,funding_rate,borrow_rate\n"
      "2024-01-02,B,20,0.001,0.002\n2024-01-03,B,21,0.001,0.002\n");
  const RunConfig config = *ParseRunConfig("[adtv]\ndefault = 1\n", "");
  const MarketQuote fallback{10, 0.0001, 0.0001};
  const ScenarioSpec s =
      *BuildScenario(axe, &client, &market, config, fallback);
  ASSERT_EQ(s.assets.size(), 2u);
  EXPECT_EQ(s.assets[0].client, (std::vector<Shares>{5, 8}));
  EXPECT_EQ(s.assets[1].client, (std::vector<Shares>{0, 0}));
  EXPECT_DOUBLE_EQ(s.assets[0].quotes.at(1).price, 10);
  EXPECT_DOUBLE_EQ(s.assets[1].quotes.at(1).price, 21);
  EXPECT_TRUE(s.HasClient());
}

TEST(BuildScenarioTest, ClipComesOnlyFromAdtvTable) {
  const AxeTable small = *ParseAxeCsv("date,asset,quantity\n2024-01-02,A,1\n");
  const AxeTable huge =
      *ParseAxeCsv("date,asset,quantity\n2024-01-02,A,900000000\n");
  const RunConfig config = *ParseRunConfig("[adtv]\nA = 250\n", "");
  const MarketQuote q{10, 0.01, 0.01};
  EXPECT_EQ(BuildScenario(small, nullptr, nullptr, config, q)->assets[0].clip,
            BuildScenario(huge, nullptr, nullptr, config, q)->assets[0].clip);
  EXPECT_EQ(BuildScenario(small, nullptr, nullptr, config, q)->assets[0].clip.hi(),
            250);
  const RunConfig none;
  EXPECT_FALSE(BuildScenario(small, nullptr, nullptr, none, q).ok());
}

TEST(BuildScenarioTest, ClientMissingADateIsError) {
  const AxeTable axe = *ParseAxeCsv(
      "date,asset,quantity\n2024-01-02,A,1\n2024-01-03,A,2\n");
  const AxeTable client = *ParseAxeCsv("date,asset,quantity\n2024-01-02,A,1\n");
  const RunConfig config = *ParseRunConfig("[adtv]\ndefault = 1\n", "");
  EXPECT_FALSE(BuildScenario(axe, &client, nullptr, config, {10, 0.1, 0.1}).ok());
}

TEST(LagsTest, Parse) {
  EXPECT_EQ(*ParseLags("1,5,10"), (std::vector<int>{1, 5, 10}));
  EXPECT_FALSE(ParseLags("").ok());
  EXPECT_FALSE(ParseLags("1,,2").ok());
  EXPECT_FALSE(ParseLags("0").ok());
  EXPECT_FALSE(ParseLags("x").ok());
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(30), "30");
  EXPECT_EQ(FormatDouble(-2.5), "-2.5");
  test::ForAll(1000, 82, [](test::Gen& g, int) {
    const double v = g.Real(-1e6, 1e6) * std::pow(10.0, g.Int(-12, 6));
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  });
}

MetricsReport SampleReport() {
  MetricsReport r;
  const GridPoint p{0.3, 30, 20};
  const std::vector<double> lp = {0.25, 1.0};
  EXPECT_TRUE(AddSampleMetric(p, "obf_incl", "lp", 1, lp, true, r).ok());
  const std::vector<double> pnl = {1.5, 2.5};
  EXPECT_TRUE(AddSampleMetric(p, "obf_incl", "pnl", 0, pnl, false, r).ok());
  PathRecord rec;
  rec.point = p;
  rec.scenario = "obf_incl";
  rec.asset = "A";
  rec.date = "2024-01-02";
  rec.a_hist = -5;
  rec.a_pub = 3;
  rec.pnl = 0.125;
  r.paths.push_back(rec);
  r.config = {{"seed", "1"}, {"paths", "2"}};
  return r;
}

TEST(ReportTest, MetricsCsv) {
  const std::string csv = FormatMetricsCsv(SampleReport());
  EXPECT_EQ(csv,
            "epsilon,T,B,scenario,metric,lag,mean,stderr,n_paths\n"
            "0.3,30,20,obf_incl,lp,1,0.625,0.375,2\n"
            "0.3,30,20,obf_incl,pnl,0,2,0.5,2\n");
}

TEST(ReportTest, HistogramsCsv) {
  const std::string csv = FormatHistogramsCsv(SampleReport());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kHistogramsCsvHeader);
  EXPECT_THAT(csv, HasSubstr("0.3,30,20,obf_incl,lp,1,2,0.2,0.3,1\n"));
  EXPECT_THAT(csv, HasSubstr("0.3,30,20,obf_incl,lp,1,9,0.9,1,1\n"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
}

TEST(ReportTest, PathsCsv) {
  const std::string csv = FormatPathsCsv(SampleReport());
  EXPECT_EQ(csv, std::string(kPathsCsvHeader) +
                     "\n0.3,30,20,obf_incl,0,A,0,2024-01-02,-5,0,0,3,0,0,0.125,0\n");
}

TEST(ReportTest, SummaryJsonIsValid) {
  const nlohmann::json j = nlohmann::json::parse(FormatSummaryJson(SampleReport()));
  EXPECT_EQ(j["config"]["seed"], "1");
  EXPECT_EQ(j["counts"]["metrics"], 2);
  EXPECT_EQ(j["metrics"].size(), 2u);
  EXPECT_EQ(j["metrics"][1]["metric"], "pnl");
}

TEST(ReportTest, EmptyReportWritesHeadersAndValidJson) {
  const std::string dir = test::ScratchDir("empty_report") + "/nested/out";
  ASSERT_TRUE(WriteReport(MetricsReport{}, dir, true).ok());
  EXPECT_EQ(*ReadFile(dir + "/metrics.csv"), std::string(kMetricsCsvHeader) + "\n");
  EXPECT_EQ(*ReadFile(dir + "/histograms.csv"),
            std::string(kHistogramsCsvHeader) + "\n");
  EXPECT_EQ(*ReadFile(dir + "/paths.csv"), std::string(kPathsCsvHeader) + "\n");
  EXPECT_NO_THROW(nlohmann::json::parse(*ReadFile(dir + "/summary.json")));
}

TEST(ReportTest, PathsFileOnlyWhenRequested) {
  const std::string dir = test::ScratchDir("no_paths");
  ASSERT_TRUE(WriteReport(SampleReport(), dir, false).ok());
  EXPECT_TRUE(std::filesystem::exists(dir + "/metrics.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir + "/paths.csv"));
}

TEST(ReportTest, UnwritableDirectoryIsIoError) {
  const std::string dir = test::ScratchDir("blocked");
  ASSERT_TRUE(WriteFile(dir + "/file", "x").ok());
  const absl::Status s = WriteReport(SampleReport(), dir + "/file/sub", false);
  EXPECT_FALSE(s.ok());
  EXPECT_THAT(std::string(s.message()), HasSubstr(dir));
}

TEST(FileTest, MissingFileIsNotFound) {
  EXPECT_EQ(ReadFile("/nonexistent/axedp/file.csv").status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(ReadAxeCsv("/nonexistent/axedp/file.csv").status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace axedp
