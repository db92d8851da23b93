#include "support/fixtures.h"

#include <algorithm>
#include <numeric>

#include "dpg/predicate.h"

namespace dpg::testing {

std::filesystem::path DataDir() { return DPG_DATA_DIR; }

TreeEnsemble Stump(double threshold, int num_features) {
  TreeEnsemble model;
  std::vector<std::string> names;
  for (int f = 0; f < num_features; ++f) names.push_back("x" + std::to_string(f));
  model.features = FeatureSchema::Numeric(names);
  model.classes.labels = {"A", "B"};
  DecisionTree tree;
  tree.nodes = {TreeNode::Split(0, 0, threshold, 1, 2), TreeNode::Leaf(1, 0),
                TreeNode::Leaf(2, 1)};
  model.trees.push_back(tree);
  return model;
}

namespace {

int RandInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void Grow(DecisionTree& tree, std::mt19937_64& rng, int depth,
          const RandomEnsembleSpec& spec, int classes) {
  const int id = static_cast<int>(tree.nodes.size());
  const bool leaf = depth >= spec.max_depth ||
                    (depth > 0 && std::bernoulli_distribution(0.3)(rng));
  if (leaf) {
    tree.nodes.push_back(TreeNode::Leaf(id, RandInt(rng, 0, classes - 1)));
    return;
  }
  tree.nodes.push_back(TreeNode::Split(id, RandInt(rng, 0, spec.num_features - 1),
                                       0.05 * RandInt(rng, 1, 19), kNoChild,
                                       kNoChild));
  tree.nodes[id].left = static_cast<int>(tree.nodes.size());
  Grow(tree, rng, depth + 1, spec, classes);
  tree.nodes[id].right = static_cast<int>(tree.nodes.size());
  Grow(tree, rng, depth + 1, spec, classes);
}

}  // namespace

TreeEnsemble RandomEnsemble(std::mt19937_64& rng,
                            const RandomEnsembleSpec& spec) {
  TreeEnsemble model;
  std::vector<std::string> names;
  for (int f = 0; f < spec.num_features; ++f) names.push_back("f" + std::to_string(f));
  model.features = FeatureSchema::Numeric(names);
  const int classes = RandInt(rng, spec.min_classes, spec.max_classes);
  for (int c = 0; c < classes; ++c) model.classes.labels.push_back("c" + std::to_string(c));
  const int trees = RandInt(rng, spec.min_trees, spec.max_trees);
  for (int t = 0; t < trees; ++t) {
    DecisionTree tree;
    Grow(tree, rng, 0, spec, classes);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

Dataset RandomData(std::mt19937_64& rng, const FeatureSchema& features,
                   std::size_t rows) {
  Dataset data;
  data.features = features;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> row(features.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (double& v : row) v = u(rng);
    data.AddRow(row);
  }
  return data;
}

Dpg RandomGraph(std::mt19937_64& rng, int n, int classes, double density) {
  Dpg graph;
  const int decisions = n - classes;
  std::vector<std::string> names = {"a", "b", "c"};
  graph.provenance.features = FeatureSchema::Numeric(names);
  for (int c = 0; c < classes; ++c) graph.provenance.classes.labels.push_back(std::to_string(c));
  for (int v = 0; v < n; ++v) {
    Predicate p = v < decisions
                      ? Predicate::Decision(RandInt(rng, 0, 2),
                                            RandInt(rng, 0, 1) ? Op::kGreater
                                                               : Op::kLessEqual,
                                            0.25 * RandInt(rng, 0, 8))
                      : Predicate::Class(v - decisions);
    graph.nodes.push_back({v, p});
  }
  std::bernoulli_distribution edge(density);
  std::bernoulli_distribution loop(0.05);
  for (int u = 0; u < decisions; ++u) {
    for (int v = 0; v < n; ++v) {
      if ((u == v && loop(rng)) || (u != v && edge(rng))) {
        graph.edges.push_back({u, v, static_cast<std::uint64_t>(RandInt(rng, 1, 5))});
      }
    }
  }
  graph.source_counts.assign(n, 0);
  return graph;
}

Dpg DisjointGraph(std::mt19937_64& rng, int parts, int part_size) {
  Dpg merged;
  int offset = 0;
  for (int p = 0; p < parts; ++p) {
    Dpg g = RandomGraph(rng, part_size, 1, 0.3);
    for (auto node : g.nodes) {
      node.id += offset;
      if (node.predicate.is_class()) node.predicate.class_index = p;
      merged.nodes.push_back(node);
    }
    for (auto e : g.edges) {
      merged.edges.push_back({e.src + offset, e.dst + offset, e.weight});
    }
    merged.provenance.features = g.provenance.features;
    merged.provenance.classes.labels.push_back(std::to_string(p));
    offset += part_size;
  }
  merged.source_counts.assign(merged.nodes.size(), 0);
  return merged;
}

std::vector<int> WeakComponents(const Dpg& graph) {
  std::vector<int> parent(graph.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : graph.edges) parent[find(e.src)] = find(e.dst);
  std::vector<int> out(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) out[v] = find(static_cast<int>(v));
  return out;
}

}  // namespace dpg::testing
