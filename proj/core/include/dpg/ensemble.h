#ifndef DPG_ENSEMBLE_H_
#define DPG_ENSEMBLE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpg {

using Json = nlohmann::ordered_json;

enum class FeatureKind { kNumeric, kCategorical };

struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<FeatureKind> kinds;

  std::size_t size() const { return names.size(); }
  // All-numeric schema with the given names.
  static FeatureSchema Numeric(std::vector<std::string> names);
};

struct ClassSchema {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
};

enum class NodeKind { kSplit, kLeaf };

inline constexpr int kNoChild = -1;

// One node of a decision tree. Node ids are positions in DecisionTree::nodes.
//
// Branch convention: left = condition TRUE (x <= threshold, or x in
// categories), right = condition FALSE.
struct TreeNode {
  int id = 0;
  NodeKind kind = NodeKind::kLeaf;
  // Split fields.
  int feature = -1;
  double threshold = 0.0;
  // Category codes for a categorical split; empty for numeric splits.
  std::vector<double> categories;
  int left = kNoChild;
  int right = kNoChild;
  // Leaf field.
  int class_index = -1;

  bool is_leaf() const { return kind == NodeKind::kLeaf; }

  static TreeNode Leaf(int id, int class_index);
  static TreeNode Split(int id, int feature, double threshold, int left,
                        int right);
};

struct DecisionTree {
  int root = 0;
  std::vector<TreeNode> nodes;

  // Number of edges on the longest root-to-leaf path. Assumes a valid tree.
  int depth() const;
};

struct TreeEnsemble {
  FeatureSchema features;
  ClassSchema classes;
  std::vector<DecisionTree> trees;
  Json metadata = Json::object();
};

// Row-major numeric matrix with optional integer labels. Categorical columns
// carry category codes.
struct Dataset {
  FeatureSchema features;
  std::vector<double> values;
  std::size_t num_rows = 0;
  // Empty when the dataset is unlabeled; otherwise one entry per row
  // indexing into class_labels.
  std::vector<int> labels;
  std::vector<std::string> class_labels;

  std::size_t num_features() const { return features.size(); }
  bool labeled() const { return !labels.empty() || num_rows == 0; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * num_features(), num_features()};
  }
  void AddRow(std::span<const double> row, int label = -1);
};

// One broken invariant, located by tree and node (-1 when not applicable).
struct Violation {
  int tree = -1;
  int node = -1;
  std::string rule;

  // "<rule> at tree T node N", dropping missing coordinates.
  std::string ToString() const;
};

// Checks every schema and tree invariant; an empty result means valid.
std::vector<Violation> ValidateEnsemble(const TreeEnsemble& model);

// Throws SchemaError when the dataset shape or labels are inconsistent.
void ValidateDataset(const Dataset& data);

// Re-indexes the dataset labels to match `classes` by label name. Throws
// SchemaError for a label the schema does not know.
void AlignLabels(Dataset& data, const ClassSchema& classes);

// Leaf class reached by `x` in `tree`, without recording the path.
int PredictTree(const DecisionTree& tree, std::span<const double> x);

// Majority vote over all trees; ties go to the lowest class index.
int PredictMajority(const TreeEnsemble& model, std::span<const double> x);

}  // namespace dpg

#endif  // DPG_ENSEMBLE_H_
