#include "dpg/ensemble.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "dpg/errors.h"

namespace dpg {

FeatureSchema FeatureSchema::Numeric(std::vector<std::string> names) {
  FeatureSchema schema;
  schema.kinds.assign(names.size(), FeatureKind::kNumeric);
  schema.names = std::move(names);
  return schema;
}

TreeNode TreeNode::Leaf(int id, int class_index) {
  TreeNode node;
  node.id = id;
  node.kind = NodeKind::kLeaf;
  node.class_index = class_index;
  return node;
}

TreeNode TreeNode::Split(int id, int feature, double threshold, int left,
                         int right) {
  TreeNode node;
  node.id = id;
  node.kind = NodeKind::kSplit;
  node.feature = feature;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return node;
}

int DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  int best = 0;
  std::vector<std::pair<int, int>> stack = {{root, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    const TreeNode& node = nodes[id];
    if (!node.is_leaf()) {
      stack.emplace_back(node.left, d + 1);
      stack.emplace_back(node.right, d + 1);
    }
  }
  return best;
}

void Dataset::AddRow(std::span<const double> row, int label) {
  if (row.size() != num_features()) {
    throw DataError("row " + std::to_string(num_rows) + " has " +
                    std::to_string(row.size()) + " values, expected " +
                    std::to_string(num_features()));
  }
  values.insert(values.end(), row.begin(), row.end());
  if (label >= 0) labels.push_back(label);
  ++num_rows;
}

std::string Violation::ToString() const {
  std::string out = rule;
  if (tree >= 0) out += " at tree " + std::to_string(tree);
  if (node >= 0) out += " node " + std::to_string(node);
  return out;
}

namespace {

void ValidateSchemas(const TreeEnsemble& model, std::vector<Violation>& out) {
  const FeatureSchema& f = model.features;
  if (f.names.empty()) out.push_back({-1, -1, "feature schema is empty"});
  if (f.kinds.size() != f.names.size()) {
    out.push_back({-1, -1, "feature kinds and names differ in length"});
  }
  std::set<std::string> seen;
  for (const auto& name : f.names) {
    if (name.empty()) out.push_back({-1, -1, "empty feature name"});
    if (!seen.insert(name).second) {
      out.push_back({-1, -1, "duplicate feature name '" + name + "'"});
    }
  }
  if (model.classes.size() < 2) {
    out.push_back({-1, -1, "class schema needs at least 2 labels"});
  }
  std::set<std::string> labels;
  for (const auto& label : model.classes.labels) {
    if (!labels.insert(label).second) {
      out.push_back({-1, -1, "duplicate class label '" + label + "'"});
    }
  }
  if (model.trees.empty()) out.push_back({-1, -1, "ensemble has no trees"});
}

void ValidateTree(const TreeEnsemble& model, int t,
                  std::vector<Violation>& out) {
  const DecisionTree& tree = model.trees[t];
  const int n = static_cast<int>(tree.nodes.size());
  if (n == 0) {
    out.push_back({t, -1, "tree has no nodes"});
    return;
  }
  auto in_range = [n](int id) { return id >= 0 && id < n; };

  for (int i = 0; i < n; ++i) {
    const TreeNode& node = tree.nodes[i];
    if (node.id != i) out.push_back({t, node.id, "node id out of order"});
    if (node.is_leaf()) {
      if (node.class_index < 0 ||
          node.class_index >= static_cast<int>(model.classes.size())) {
        out.push_back({t, i, "leaf class index out of range"});
      }
      continue;
    }
    if (node.left == kNoChild) out.push_back({t, i, "missing left child"});
    else if (!in_range(node.left)) out.push_back({t, i, "left child out of range"});
    if (node.right == kNoChild) out.push_back({t, i, "missing right child"});
    else if (!in_range(node.right)) out.push_back({t, i, "right child out of range"});
    if (node.feature < 0 ||
        node.feature >= static_cast<int>(model.features.size())) {
      out.push_back({t, i, "split feature index out of range"});
      continue;
    }
    const bool categorical =
        static_cast<std::size_t>(node.feature) < model.features.kinds.size() &&
        model.features.kinds[node.feature] == FeatureKind::kCategorical;
    if (categorical) {
      if (node.categories.empty()) {
        out.push_back({t, i, "categorical split has no categories"});
      }
    } else if (!std::isfinite(node.threshold)) {
      out.push_back({t, i, "non-finite threshold"});
    }
  }

  if (!in_range(tree.root)) {
    out.push_back({t, tree.root, "root id out of range"});
    return;
  }

  // Iterative DFS colouring: 1 = on the current path, 2 = finished.
  std::vector<int> state(n, 0);
  std::vector<std::pair<int, int>> stack = {{tree.root, 0}};
  state[tree.root] = 1;
  while (!stack.empty()) {
    auto& [id, next_child] = stack.back();
    const TreeNode& node = tree.nodes[id];
    if (node.is_leaf() || next_child == 2) {
      state[id] = 2;
      stack.pop_back();
      continue;
    }
    const int child = next_child == 0 ? node.left : node.right;
    ++next_child;
    if (!in_range(child)) continue;
    if (state[child] == 1) {
      out.push_back({t, child, "cycle"});
    } else if (state[child] == 2) {
      out.push_back({t, child, "node reached more than once"});
    } else {
      state[child] = 1;
      stack.emplace_back(child, 0);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (state[i] == 0) out.push_back({t, i, "node unreachable from root"});
  }
}

}  // namespace

std::vector<Violation> ValidateEnsemble(const TreeEnsemble& model) {
  std::vector<Violation> out;
  ValidateSchemas(model, out);
  for (int t = 0; t < static_cast<int>(model.trees.size()); ++t) {
    ValidateTree(model, t, out);
  }
  return out;
}

void ValidateDataset(const Dataset& data) {
  if (data.features.kinds.size() != data.features.names.size()) {
    throw SchemaError("dataset feature kinds and names differ in length");
  }
  if (data.values.size() != data.num_rows * data.num_features()) {
    throw SchemaError("dataset value count does not match rows x features");
  }
  if (!data.labels.empty()) {
    if (data.labels.size() != data.num_rows) {
      throw SchemaError("dataset has " + std::to_string(data.labels.size()) +
                        " labels for " + std::to_string(data.num_rows) +
                        " rows");
    }
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      const int label = data.labels[i];
      if (label < 0 || label >= static_cast<int>(data.class_labels.size())) {
        throw SchemaError("row " + std::to_string(i) +
                          " has an invalid class index");
      }
    }
  }
}

void AlignLabels(Dataset& data, const ClassSchema& classes) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < classes.labels.size(); ++i) {
    index.emplace(classes.labels[i], static_cast<int>(i));
  }
  std::vector<int> remap(data.class_labels.size());
  for (std::size_t i = 0; i < data.class_labels.size(); ++i) {
    auto it = index.find(data.class_labels[i]);
    if (it == index.end()) {
      throw SchemaError("dataset label '" + data.class_labels[i] +
                        "' is not a model class");
    }
    remap[i] = it->second;
  }
  for (int& label : data.labels) label = remap[label];
  data.class_labels = classes.labels;
}

int PredictTree(const DecisionTree& tree, std::span<const double> x) {
  int id = tree.root;
  for (std::size_t steps = 0; steps <= tree.nodes.size(); ++steps) {
    const TreeNode& node = tree.nodes[id];
    if (node.is_leaf()) return node.class_index;
    const double v = x[node.feature];
    if (!std::isfinite(v)) {
      throw TraversalError("non-finite value for feature " +
                           std::to_string(node.feature));
    }
    bool go_left;
    if (node.categories.empty()) {
      go_left = v <= node.threshold;
    } else {
      go_left = std::find(node.categories.begin(), node.categories.end(), v) !=
                node.categories.end();
    }
    id = go_left ? node.left : node.right;
  }
  throw TraversalError("tree walk did not reach a leaf");
}

int PredictMajority(const TreeEnsemble& model, std::span<const double> x) {
  std::vector<int> votes(model.classes.size(), 0);
  for (const auto& tree : model.trees) ++votes[PredictTree(tree, x)];
  // max_element returns the first maximum, i.e. the lowest class index.
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                          votes.begin());
}

}  // namespace dpg
