#include <filesystem>

#include <gtest/gtest.h>

#include "dpg/dot.h"
#include "dpg/errors.h"
#include "dpg/io.h"
#include "dpg/manifest.h"
#include "dpg/metrics.h"
#include "dpg/report.h"
#include "support/fixtures.h"

namespace dpg {
namespace {

namespace fs = std::filesystem;

TEST(Csv, ParsesLabelsInFirstAppearanceOrder) {
  const Dataset d = ParseCsv("a,b,label\n1,2,z\n3,4.5,y\n5,6,z\n");
  EXPECT_EQ(d.num_rows, 3u);
  EXPECT_EQ(d.features.names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.class_labels, (std::vector<std::string>{"z", "y"}));
  EXPECT_EQ(d.labels, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(d.row(1)[1], 4.5);
}

TEST(Csv, Unlabeled) {
  const Dataset d = ParseCsv("a\n1\n-2e3\n");
  EXPECT_TRUE(d.labels.empty());
  EXPECT_EQ(d.row(1)[0], -2000.0);
}

TEST(Csv, HeaderOnlyIsEmpty) {
  const Dataset d = ParseCsv("a,b,label\n");
  EXPECT_EQ(d.num_rows, 0u);
  EXPECT_EQ(d.features.size(), 2u);
}

TEST(Csv, Errors) {
  EXPECT_THROW(ParseCsv(""), DataError);
  EXPECT_THROW(ParseCsv("a,b\n1\n"), DataError);
  try {
    ParseCsv("a,b\n1,2\n3,oops\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("oops"), std::string::npos);
  }
  EXPECT_THROW(LoadCsv("/nonexistent/file.csv"), DataError);
}

TEST(Csv, RoundTrip) {
  const Dataset d = LoadCsv(testing::DataDir() / "iris_rf5" / "test.csv");
  const std::string text = DatasetToCsv(d);
  const Dataset back = ParseCsv(text);
  EXPECT_EQ(back.values, d.values);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(DatasetToCsv(back), text);
}

TEST(Csv, Helpers) {
  EXPECT_EQ(ShortestDouble(0.1), "0.1");
  EXPECT_EQ(ShortestDouble(2.0), "2");
  EXPECT_EQ(CsvField("plain"), "plain");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(WriteFileAtomic, WritesAndReplaces) {
  const fs::path dir = fs::temp_directory_path() / "dpg_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / "x.txt";
  WriteFileAtomic(p, "one");
  WriteFileAtomic(p, "two");
  EXPECT_EQ(ReadFile(p), "two");
  fs::remove_all(dir);
}

TEST(Manifest, DigestDependsOnContentOnly) {
  const fs::path dir = fs::temp_directory_path() / "dpg_manifest_test";
  fs::create_directories(dir);
  WriteFileAtomic(dir / "a", "hello");
  WriteFileAtomic(dir / "b", "hello");
  const Json config = {{"seed", 1}};
  const std::string da = ComputeDigest("build", config, {(dir / "a").string()});
  EXPECT_EQ(da.size(), 16u);
  EXPECT_EQ(da, ComputeDigest("build", config, {(dir / "b").string()}));
  EXPECT_NE(da, ComputeDigest("build", {{"seed", 2}}, {(dir / "a").string()}));
  EXPECT_NE(da, ComputeDigest("metrics", config, {(dir / "a").string()}));
  EXPECT_EQ(ManifestPathFor("out/g.json"), fs::path("out/g.json.manifest.json"));
  fs::remove_all(dir);
}

TEST(Manifest, Fnv1a64KnownValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

Dpg StumpGraph() {
  Dataset d;
  d.features = FeatureSchema::Numeric({"x0"});
  const double a[] = {0.0};
  const double b[] = {1.0};
  d.AddRow(a);
  d.AddRow(b);
  return BuildDpg(testing::Stump(0.5), d, {});
}

TEST(Dot, Stump) {
  const std::string text = ExportDot(StumpGraph()).text;
  EXPECT_EQ(text.rfind("digraph DPG {\n", 0), 0u);
  EXPECT_NE(text.find("  0 [label=\"x0 <= 0.50\"];\n"), std::string::npos);
  EXPECT_NE(text.find("  1 [label=\"Class A\", shape=ellipse, style=filled, "
                      "fillcolor=\"#a1d99b\"];\n"),
            std::string::npos);
  EXPECT_NE(text.find("  0 -> 1 [label=\"1\"];\n"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 2), "}\n");
}

TEST(Dot, QuotesAndCommunities) {
  Dpg g = StumpGraph();
  g.provenance.features.names[0] = "say \"x\"";
  const CommunityReport r = DetectCommunities(g, 1);
  const std::string text = ExportDot(g, {.communities = &r}).text;
  EXPECT_NE(text.find("say \\\"x\\\""), std::string::npos);
  EXPECT_NE(text.find("#8dd3c7"), std::string::npos);
  CommunityReport broken;
  EXPECT_THROW(ExportDot(g, {.communities = &broken}), SchemaError);
}

TEST(Report, CentralityCsv) {
  const Dpg g = StumpGraph();
  const std::string csv = CentralityCsv(g, LocalReachingCentrality(g, LrcMode::kUnweighted), 2);
  EXPECT_EQ(csv, "rank,predicate,score\n1,x0 <= 0.50,0.3333333333333333\n"
                 "2,x0 > 0.50,0.3333333333333333\n");
}

TEST(Report, Sections) {
  const Dpg g = StumpGraph();
  ReportOptions options;
  Json all = BuildReport(g, options);
  for (const char* key : {"provenance", "constraints", "bc_top", "lrc_top", "communities"}) {
    EXPECT_TRUE(all.contains(key)) << key;
  }
  options.betweenness = options.reaching = options.communities = options.constraints = false;
  Json bare = BuildReport(g, options);
  EXPECT_EQ(bare.size(), 1u);
  EXPECT_EQ(bare["provenance"]["nodes"], 4);
}

}  // namespace
}  // namespace dpg
