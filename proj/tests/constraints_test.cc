#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "dpg/constraints.h"
#include "dpg/ensemble_json.h"
#include "dpg/errors.h"
#include "dpg/io.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace dpg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Dataset Column(std::vector<double> xs) {
  Dataset d;
  d.features = FeatureSchema::Numeric({"x0"});
  for (double x : xs) {
    const double v[] = {x};
    d.AddRow(v);
  }
  return d;
}

TEST(ExtractConstraints, Stump) {
  const Dpg g = BuildDpg(testing::Stump(0.5), Column({0.0, 1.0}), {});
  const ClassConstraints a = ExtractConstraints(g, 0);
  ASSERT_EQ(a.intervals.size(), 1u);
  EXPECT_EQ(a.intervals[0].lower, -kInf);
  EXPECT_EQ(a.intervals[0].upper, 0.5);
  const ClassConstraints b = ExtractConstraints(g, 1);
  EXPECT_EQ(b.intervals[0].lower, 0.5);
  EXPECT_EQ(b.intervals[0].upper, kInf);
  EXPECT_EQ(FormatInterval(b.intervals[0], g.provenance.features, 2), "0.50 < x0");
}

TEST(ExtractConstraints, UnreachedClassIsUnconstrained) {
  const Dpg g = BuildDpg(testing::Stump(0.5), Column({0.0}), {});
  EXPECT_TRUE(ExtractConstraints(g, 1).intervals.empty());
  EXPECT_THROW(ExtractConstraints(g, 5), SchemaError);
}

TEST(ExtractConstraints, MatchesOracles) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const Dpg g = testing::RandomGraph(rng, 12, 2, 0.25);
    for (int c = 0; c < 2; ++c) {
      const ClassConstraints got = ExtractConstraints(g, c);
      ASSERT_EQ(got, testing::ClosureConstraints(g, c));
      ASSERT_EQ(got, testing::PathEnumConstraints(g, c));
    }
  }
  for (int i = 0; i < 20; ++i) {
    const TreeEnsemble model = testing::RandomEnsemble(rng);
    const Dpg g = BuildDpg(model, testing::RandomData(rng, model.features, 100), {});
    for (NodeId c : g.ClassNodes()) {
      const int k = g.nodes[c].predicate.class_index;
      ASSERT_EQ(ExtractConstraints(g, k), testing::ClosureConstraints(g, k));
    }
  }
}

TEST(FeatureInterval, Boundaries) {
  FeatureInterval iv;
  iv.feature = 0;
  iv.upper = 1.65;
  EXPECT_TRUE(iv.Contains(1.65));
  EXPECT_FALSE(iv.Contains(1.66));
  iv.lower = 0.8;
  EXPECT_FALSE(iv.Contains(0.8));
  EXPECT_FALSE(iv.Empty());
  iv.lower = 2.0;
  EXPECT_TRUE(iv.Empty());
  FeatureInterval cat;
  cat.include = std::set<double>{1.0, 2.0};
  cat.exclude = {2.0};
  EXPECT_TRUE(cat.Contains(1.0));
  EXPECT_FALSE(cat.Contains(2.0));
  EXPECT_FALSE(cat.Contains(3.0));
}

TEST(ExtractConstraints, IrisClassZero) {
  const TreeEnsemble model =
      LoadEnsemble(testing::DataDir() / "iris_rf5" / "model.json");
  const Dpg g =
      BuildDpg(model, LoadCsv(testing::DataDir() / "iris_rf5" / "train.csv"), {});
  const ClassConstraints cc = ExtractConstraints(g, 0);
  std::vector<std::string> text;
  for (const auto& iv : cc.intervals) {
    text.push_back(FormatInterval(iv, g.provenance.features, 2));
  }
  EXPECT_EQ(text, (std::vector<std::string>{"petal length (cm) <= 2.50",
                                            "petal width (cm) <= 1.65"}));
}

TEST(EvaluateConstraints, CountsAndLeakage) {
  const Dpg g = BuildDpg(testing::Stump(0.5), Column({0.0, 1.0}), {});
  Dataset d = Column({0.1, 0.9, 0.2});
  d.labels = {0, 0, 1};
  d.class_labels = {"A", "B"};
  std::vector<std::size_t> rows = {0, 1, 2};
  const auto e = EvaluateConstraints(d, rows, ExtractConstraints(g, 0));
  EXPECT_EQ(e.class_rows, 2u);
  EXPECT_EQ(e.matched, 1u);
  EXPECT_EQ(e.leakage, 1u);
  EXPECT_DOUBLE_EQ(e.recall, 0.5);
  EXPECT_THROW(EvaluateConstraints(Column({0.1}), std::vector<std::size_t>{0},
                                   ExtractConstraints(g, 0)),
               DataError);
}

TEST(ConstraintsJson, NullForOpenSides) {
  const Dpg g = BuildDpg(testing::Stump(0.5), Column({0.0, 1.0}), {});
  const Json j = ConstraintsToJson(ExtractAllConstraints(g), g.provenance);
  const Json& c0 = j["classes"][0]["constraints"][0];
  EXPECT_TRUE(c0["lower"].is_null());
  EXPECT_EQ(c0["upper"], 0.5);
  EXPECT_EQ(c0["text"], "x0 <= 0.50");
  EXPECT_EQ(j["classes"][1]["class"], "B");
}

}  // namespace
}  // namespace dpg
