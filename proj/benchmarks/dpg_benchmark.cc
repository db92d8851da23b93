#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "dpg/graph.h"
#include "dpg/metrics.h"

namespace dpg {
namespace {

// Full trees of the given depth over `features` uniform features.
TreeEnsemble SyntheticForest(int trees, int depth, int features,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> feature(0, features - 1);
  std::uniform_int_distribution<int> grid(1, 99);
  TreeEnsemble model;
  std::vector<std::string> names;
  for (int f = 0; f < features; ++f) names.push_back("f" + std::to_string(f));
  model.features = FeatureSchema::Numeric(names);
  model.classes.labels = {"a", "b", "c", "d"};
  for (int t = 0; t < trees; ++t) {
    DecisionTree tree;
    const int internal = (1 << depth) - 1;
    for (int i = 0; i < internal; ++i) {
      tree.nodes.push_back(TreeNode::Split(i, feature(rng), 0.01 * grid(rng),
                                           2 * i + 1, 2 * i + 2));
    }
    for (int i = internal; i < 2 * internal + 1; ++i) {
      tree.nodes.push_back(TreeNode::Leaf(i, i % 4));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

Dataset SyntheticRows(const FeatureSchema& features, std::size_t rows,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset data;
  data.features = features;
  std::vector<double> row(features.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (double& v : row) v = u(rng);
    data.AddRow(row);
  }
  return data;
}

void BM_BuildTrees(benchmark::State& state) {
  const auto model = SyntheticForest(static_cast<int>(state.range(0)), 8, 16, 1);
  const auto data = SyntheticRows(model.features, 1000, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildDpg(model, data, {}, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildTrees)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_BuildSamples(benchmark::State& state) {
  const auto model = SyntheticForest(32, 8, 16, 1);
  const auto data = SyntheticRows(model.features, state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildDpg(model, data, {}, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildSamples)->RangeMultiplier(2)->Range(250, 8000)->Complexity();

void BM_BuildDepth(benchmark::State& state) {
  const auto model = SyntheticForest(32, static_cast<int>(state.range(0)), 16, 1);
  const auto data = SyntheticRows(model.features, 1000, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildDpg(model, data, {}, 1));
  }
}
BENCHMARK(BM_BuildDepth)->DenseRange(4, 12, 2);

Dpg BenchGraph(int trees) {
  const auto model = SyntheticForest(trees, 6, 8, 3);
  return BuildDpg(model, SyntheticRows(model.features, 500, 4), {});
}

void BM_Betweenness(benchmark::State& state) {
  const Dpg g = BenchGraph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BetweennessCentrality(g, BcMode::kWeightedLength, 1));
  }
  state.counters["nodes"] = static_cast<double>(g.size());
}
BENCHMARK(BM_Betweenness)->Arg(5)->Arg(20)->Arg(100);

void BM_LocalReaching(benchmark::State& state) {
  const Dpg g = BenchGraph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(LocalReachingCentrality(g));
  }
  state.counters["nodes"] = static_cast<double>(g.size());
}
BENCHMARK(BM_LocalReaching)->Arg(5)->Arg(20)->Arg(100);

void BM_Communities(benchmark::State& state) {
  const Dpg g = BenchGraph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectCommunities(g, 42));
  }
  state.counters["nodes"] = static_cast<double>(g.size());
}
BENCHMARK(BM_Communities)->Arg(5)->Arg(20)->Arg(100);

}  // namespace
}  // namespace dpg

BENCHMARK_MAIN();
