#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "dpg/graph.h"
#include "dpg/io.h"
#include "support/fixtures.h"

namespace dpg::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpg_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("DPG_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("DPG_SEED");
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return CliMain(args, out_, err_);
  }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }
  Json ReadJson(const std::string& name) const {
    return Json::parse(ReadFile(dir_ / name));
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const std::string kModel = (testing::DataDir() / "iris_rf5" / "model.json").string();
const std::string kTrain = (testing::DataDir() / "iris_rf5" / "train.csv").string();

TEST_F(CliTest, UsageExitCodes) {
  EXPECT_EQ(Run({"--help"}), kExitOk);
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"build", "--model", kModel}), kExitUsage);
  EXPECT_EQ(Run({"metrics", "--dpg", "x", "--metric", "pagerank", "--out", "y"}),
            kExitUsage);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(Run({"build", "--model", P("missing.json"), "--data", kTrain, "--out",
                 P("g.json")}),
            kExitDataError);
  WriteFileAtomic(dir_ / "bad.csv", "a,b\n1,x\n");
  EXPECT_EQ(Run({"build", "--model", kModel, "--data", P("bad.csv"), "--out",
                 P("g.json")}),
            kExitDataError);
  EXPECT_FALSE(fs::exists(dir_ / "g.json"));
}

TEST_F(CliTest, BuildWritesGraphAndManifest) {
  ASSERT_EQ(Run({"build", "--model", kModel, "--data", kTrain, "--out", P("g.json")}),
            kExitOk)
      << err_.str();
  const Dpg g = LoadDpg(dir_ / "g.json");
  EXPECT_EQ(g.size(), 45u);
  const Json m = ReadJson("g.json.manifest.json");
  EXPECT_EQ(m["command"], "build");
  EXPECT_EQ(m["outputs"][0], P("g.json"));
  EXPECT_EQ(m["digest"].get<std::string>().size(), 16u);
  const std::string digest = m["digest"];
  ASSERT_EQ(Run({"build", "--model", kModel, "--data", kTrain, "--out", P("h.json")}),
            kExitOk);
  EXPECT_EQ(ReadJson("h.json.manifest.json")["digest"], digest);
  EXPECT_EQ(ReadFile(dir_ / "h.json"), ReadFile(dir_ / "g.json"));
}

TEST_F(CliTest, Pipeline) {
  const std::string iris = (testing::DataDir() / "iris.csv").string();
  ASSERT_EQ(Run({"train", "--data", iris, "--trees", "5", "--seed", "42",
                 "--test-fraction", "0.2", "--out", P("model.json")}),
            kExitOk)
      << err_.str();
  for (const char* f : {"model.json", "model.eval.json", "model.train.csv",
                        "model.test.csv", "model.json.manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  EXPECT_GE(ReadJson("model.eval.json")["test"]["accuracy"].get<double>(), 0.93);

  ASSERT_EQ(Run({"build", "--model", P("model.json"), "--data", P("model.train.csv"),
                 "--out", P("dpg.json")}),
            kExitOk);
  ASSERT_EQ(Run({"metrics", "--dpg", P("dpg.json"), "--metric", "bc", "--top", "3",
                 "--out", P("bc.csv")}),
            kExitOk);
  const std::string csv = ReadFile(dir_ / "bc.csv");
  EXPECT_EQ(csv.rfind("rank,predicate,score\n1,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  for (const char* metric : {"bc-hops", "lrc", "lrc-unweighted"}) {
    EXPECT_EQ(Run({"metrics", "--dpg", P("dpg.json"), "--metric", metric, "--out",
                   P("m.csv")}),
              kExitOk);
  }
  ASSERT_EQ(Run({"communities", "--dpg", P("dpg.json"), "--out", P("lpa.json")}),
            kExitOk);
  EXPECT_EQ(Run({"communities", "--dpg", P("dpg.json"), "--view", "undirected",
                 "--out", P("lpa_u.json")}),
            kExitOk);
  ASSERT_EQ(Run({"constraints", "--dpg", P("dpg.json"), "--out", P("c.json"),
                 "--evaluate", P("model.test.csv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(ReadJson("c.json")["classes"].size(), 3u);
  ASSERT_EQ(Run({"dot", "--dpg", P("dpg.json"), "--communities", P("lpa.json"),
                 "--out", P("g.dot")}),
            kExitOk);
  EXPECT_EQ(ReadFile(dir_ / "g.dot").rfind("digraph DPG {", 0), 0u);
  ASSERT_EQ(Run({"report", "--dpg", P("dpg.json"), "--out", P("r.json")}), kExitOk);
  const Json r = ReadJson("r.json");
  for (const char* key : {"provenance", "constraints", "bc_top", "lrc_top", "communities"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  for (const char* f : {"dpg.json", "bc.csv", "lpa.json", "c.json", "g.dot", "r.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / (std::string(f) + ".manifest.json"))) << f;
  }
}

TEST_F(CliTest, SeedEnvironmentOverride) {
  ASSERT_EQ(Run({"build", "--model", kModel, "--data", kTrain, "--out", P("g.json")}),
            kExitOk);
  setenv("DPG_SEED", "7", 1);
  ASSERT_EQ(Run({"communities", "--dpg", P("g.json"), "--seed", "99", "--out",
                 P("a.json")}),
            kExitOk);
  EXPECT_EQ(ReadJson("a.json")["seed"], 7);
  EXPECT_EQ(ReadJson("a.json.manifest.json")["config"]["seed"], 7);
  setenv("DPG_SEED", "seven", 1);
  EXPECT_EQ(Run({"communities", "--dpg", P("g.json"), "--out", P("b.json")}),
            kExitDataError);
}

}  // namespace
}  // namespace dpg::cli
