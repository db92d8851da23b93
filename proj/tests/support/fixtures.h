#ifndef DPG_TESTS_SUPPORT_FIXTURES_H_
#define DPG_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dpg/ensemble.h"
#include "dpg/graph.h"

namespace dpg::testing {

std::filesystem::path DataDir();

// Single split on feature 0 at `threshold`: left -> class 0, right -> class 1.
TreeEnsemble Stump(double threshold = 0.5, int num_features = 1);

struct RandomEnsembleSpec {
  int min_trees = 1;
  int max_trees = 16;
  int min_classes = 2;
  int max_classes = 6;
  int num_features = 4;
  int max_depth = 6;
};

// Random trees whose thresholds sit on a 0.05 grid in [0, 1], so distinct
// trees share canonical predicates.
TreeEnsemble RandomEnsemble(std::mt19937_64& rng,
                            const RandomEnsembleSpec& spec = {});

// Uniform [0, 1) features, unlabeled.
Dataset RandomData(std::mt19937_64& rng, const FeatureSchema& features,
                   std::size_t rows);

// Arbitrary directed graph on `n` nodes. The last `classes` nodes are class
// terminals without outgoing edges; self-loops appear occasionally.
Dpg RandomGraph(std::mt19937_64& rng, int n, int classes, double density);

// Graph with `parts` disconnected copies of random graphs.
Dpg DisjointGraph(std::mt19937_64& rng, int parts, int part_size);

// Component id per node, ignoring edge direction.
std::vector<int> WeakComponents(const Dpg& graph);

}  // namespace dpg::testing

#endif  // DPG_TESTS_SUPPORT_FIXTURES_H_
