#include "dpg/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "dpg/errors.h"
#include "parallel.h"

namespace dpg {

std::size_t MaxFeatures::Resolve(std::size_t num_features) const {
  std::size_t k = num_features;
  switch (mode) {
    case Mode::kSqrt:
      k = static_cast<std::size_t>(std::floor(std::sqrt(
          static_cast<double>(num_features))));
      break;
    case Mode::kAll:
      break;
    case Mode::kCount:
      k = count;
      break;
  }
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(num_features, 1));
}

void TrainConfig::Validate() const {
  if (n_trees < 1) throw SchemaError("n_trees must be at least 1");
  if (min_samples_split < 2) {
    throw SchemaError("min_samples_split must be at least 2");
  }
  if (max_depth && *max_depth < 0) throw SchemaError("max_depth must be >= 0");
  if (max_features.mode == MaxFeatures::Mode::kCount && max_features.count < 1) {
    throw SchemaError("max_features count must be at least 1");
  }
}

Json TrainConfig::ToJson() const {
  Json j = Json::object();
  j["n_trees"] = n_trees;
  j["max_depth"] = max_depth ? Json(*max_depth) : Json(nullptr);
  j["min_samples_split"] = min_samples_split;
  switch (max_features.mode) {
    case MaxFeatures::Mode::kSqrt: j["max_features"] = "sqrt"; break;
    case MaxFeatures::Mode::kAll: j["max_features"] = "all"; break;
    case MaxFeatures::Mode::kCount: j["max_features"] = max_features.count; break;
  }
  j["bootstrap"] = bootstrap;
  j["seed"] = seed;
  j["criterion"] = "gini";
  return j;
}

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (const auto& row : confusion) {
    n = std::accumulate(row.begin(), row.end(), n);
  }
  return n;
}

Json EvalReport::ToJson(const ClassSchema& classes) const {
  return {{"classes", classes.labels},
          {"confusion", confusion},
          {"accuracy", accuracy},
          {"samples", total()}};
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

SplitReport TrainTestSplit(const Dataset& data, double test_fraction,
                           std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw SchemaError("test fraction must lie strictly between 0 and 1");
  }
  if (data.labels.empty() && data.num_rows > 0) {
    throw DataError("train/test split needs a labeled dataset");
  }
  const std::size_t n = data.num_rows;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // numpy's legacy RandomState permutation: 32-bit MT19937 seeded directly,
  // masked rejection for each swap index.
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
  for (std::size_t i = n; i-- > 1;) {
    std::uint64_t mask = i;
    for (int shift = 1; shift < 64; shift *= 2) mask |= mask >> shift;
    std::uint64_t j;
    do {
      j = rng() & mask;
    } while (j > i);
    std::swap(order[i], order[j]);
  }
  auto n_test = static_cast<std::size_t>(
      std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
  n_test = std::min(n_test, n);
  SplitReport split;
  split.test.assign(order.begin(), order.begin() + n_test);
  split.train.assign(order.begin() + n_test, order.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

Dataset Subset(const Dataset& data, std::span<const std::size_t> rows) {
  Dataset out;
  out.features = data.features;
  out.class_labels = data.class_labels;
  out.values.reserve(rows.size() * data.num_features());
  for (std::size_t r : rows) {
    out.AddRow(data.row(r), data.labels.empty() ? -1 : data.labels[r]);
  }
  return out;
}

double GiniImpurity(std::span<const std::size_t> class_counts) {
  const double total = static_cast<double>(
      std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0}));
  if (total == 0.0) return 0.0;
  double sum_sq = 0.0;
  for (std::size_t c : class_counts) {
    const double p = static_cast<double>(c) / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace {

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  // n_left * gini(left) + n_right * gini(right)
  double weighted_impurity = std::numeric_limits<double>::infinity();

  bool valid() const { return feature >= 0; }
};

bool Better(const SplitCandidate& a, const SplitCandidate& b) {
  if (!a.valid()) return false;
  if (!b.valid()) return true;
  const double tol =
      1e-12 * std::max({1.0, std::fabs(a.weighted_impurity),
                        std::fabs(b.weighted_impurity)});
  if (a.weighted_impurity < b.weighted_impurity - tol) return true;
  if (a.weighted_impurity > b.weighted_impurity + tol) return false;
  if (a.feature != b.feature) return a.feature < b.feature;
  return a.threshold < b.threshold;
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, const TrainConfig& config,
              std::mt19937_64& rng)
      : data_(data),
        config_(config),
        rng_(rng),
        num_classes_(data.class_labels.size()),
        features_to_try_(config.max_features.Resolve(data.num_features())) {}

  DecisionTree Build(std::vector<std::size_t> rows) {
    tree_.root = Grow(rows, 0);
    return std::move(tree_);
  }

 private:
  std::vector<std::size_t> Counts(std::span<const std::size_t> rows) const {
    std::vector<std::size_t> counts(num_classes_, 0);
    for (std::size_t r : rows) ++counts[data_.labels[r]];
    return counts;
  }

  int AddNode(TreeNode node) {
    node.id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(std::move(node));
    return tree_.nodes.back().id;
  }

  // Best threshold on one feature; also reports whether the feature is
  // constant over `rows`.
  SplitCandidate BestOnFeature(int feature, std::span<const std::size_t> rows,
                               bool& constant) {
    sorted_.clear();
    for (std::size_t r : rows) {
      sorted_.emplace_back(data_.row(r)[feature], data_.labels[r]);
    }
    std::sort(sorted_.begin(), sorted_.end());
    constant = sorted_.front().first == sorted_.back().first;
    SplitCandidate best;
    if (constant) return best;

    std::vector<std::size_t> left(num_classes_, 0);
    std::vector<std::size_t> right = Counts(rows);
    const std::size_t n = sorted_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left[sorted_[i].second];
      --right[sorted_[i].second];
      const double a = sorted_[i].first;
      const double b = sorted_[i + 1].first;
      if (a == b) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = static_cast<double>(n - i - 1);
      SplitCandidate c;
      c.feature = feature;
      c.threshold = a + (b - a) / 2.0;
      if (!(c.threshold < b)) c.threshold = a;
      c.weighted_impurity = nl * GiniImpurity(left) + nr * GiniImpurity(right);
      if (Better(c, best)) best = c;
    }
    return best;
  }

  SplitCandidate FindSplit(std::span<const std::size_t> rows) {
    const std::size_t p = data_.num_features();
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    const bool sample = features_to_try_ < p;
    SplitCandidate best;
    std::size_t informative = 0;
    for (std::size_t i = 0; i < p; ++i) {
      if (sample) std::swap(order[i], order[i + UniformIndex(rng_, p - i)]);
      bool constant = false;
      const SplitCandidate c = BestOnFeature(order[i], rows, constant);
      if (Better(c, best)) best = c;
      if (!constant) ++informative;
      // Keep drawing past constant features, as long as none was useful.
      if (informative >= features_to_try_) break;
    }
    return best;
  }

  int Grow(std::vector<std::size_t>& rows, int depth) {
    const auto counts = Counts(rows);
    const int majority = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    const double impurity = GiniImpurity(counts);
    const bool depth_capped = config_.max_depth && depth >= *config_.max_depth;
    if (depth_capped || rows.size() < config_.min_samples_split ||
        impurity == 0.0) {
      return AddNode(TreeNode::Leaf(0, majority));
    }
    const SplitCandidate split = FindSplit(rows);
    if (!split.valid()) return AddNode(TreeNode::Leaf(0, majority));

    const double parent = static_cast<double>(rows.size()) * impurity;
    if (split.weighted_impurity > parent * (1.0 + 1e-12) + 1e-12) {
      throw std::logic_error("CART split increased impurity");
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (data_.row(r)[split.feature] <= split.threshold ? left_rows : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int id = AddNode(TreeNode::Split(0, split.feature, split.threshold,
                                           kNoChild, kNoChild));
    const int left = Grow(left_rows, depth + 1);
    const int right = Grow(right_rows, depth + 1);
    tree_.nodes[id].left = left;
    tree_.nodes[id].right = right;
    return id;
  }

  const Dataset& data_;
  const TrainConfig& config_;
  std::mt19937_64& rng_;
  std::size_t num_classes_;
  std::size_t features_to_try_;
  DecisionTree tree_;
  std::vector<std::pair<double, int>> sorted_;
};

}  // namespace

DecisionTree FitTree(const Dataset& data, std::span<const std::size_t> rows,
                     const TrainConfig& config, std::mt19937_64& rng) {
  if (rows.empty()) throw DataError("cannot fit a tree on an empty row set");
  if (data.labels.empty()) throw DataError("cannot fit a tree on unlabeled data");
  config.Validate();
  TreeBuilder builder(data, config, rng);
  return builder.Build(std::vector<std::size_t>(rows.begin(), rows.end()));
}

TreeEnsemble FitForest(const Dataset& data, const TrainConfig& config,
                       unsigned threads) {
  config.Validate();
  ValidateDataset(data);
  if (data.num_rows == 0) throw DataError("cannot fit a forest on no rows");
  if (data.labels.empty()) throw DataError("cannot fit a forest on unlabeled data");

  TreeEnsemble model;
  model.features = data.features;
  model.classes.labels = data.class_labels;
  model.trees.resize(config.n_trees);
  internal::ParallelFor(config.n_trees, threads, [&](std::size_t i) {
    std::mt19937_64 rng(config.seed + i);
    std::vector<std::size_t> rows(data.num_rows);
    if (config.bootstrap) {
      for (auto& r : rows) r = UniformIndex(rng, data.num_rows);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    model.trees[i] = FitTree(data, rows, config, rng);
  });
  model.metadata = {{"source", "dpg built-in CART random forest"},
                    {"train_rows", data.num_rows},
                    {"config", config.ToJson()}};
  return model;
}

std::vector<double> FeatureImportanceMdi(const TreeEnsemble& model,
                                         const Dataset& data) {
  if (data.num_features() != model.features.size()) {
    throw SchemaError("dataset has " + std::to_string(data.num_features()) +
                      " features, model has " +
                      std::to_string(model.features.size()));
  }
  if (data.labels.empty() && data.num_rows > 0) {
    throw DataError("MDI needs a labeled dataset");
  }
  const std::size_t k = model.classes.size();
  std::vector<double> importance(model.features.size(), 0.0);
  for (const auto& tree : model.trees) {
    // counts[node * k + class]
    std::vector<std::size_t> counts(tree.nodes.size() * k, 0);
    for (std::size_t r = 0; r < data.num_rows; ++r) {
      const auto x = data.row(r);
      int id = tree.root;
      while (true) {
        ++counts[id * k + data.labels[r]];
        const TreeNode& node = tree.nodes[id];
        if (node.is_leaf()) break;
        bool go_left = node.categories.empty()
                           ? x[node.feature] <= node.threshold
                           : std::find(node.categories.begin(),
                                       node.categories.end(),
                                       x[node.feature]) != node.categories.end();
        id = go_left ? node.left : node.right;
      }
    }
    auto weighted = [&](int id) {
      std::span<const std::size_t> c(counts.data() + id * k, k);
      const auto n = std::accumulate(c.begin(), c.end(), std::size_t{0});
      return static_cast<double>(n) * GiniImpurity(c);
    };
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const double decrease =
          weighted(node.id) - weighted(node.left) - weighted(node.right);
      importance[node.feature] += std::max(0.0, decrease);
    }
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return importance;
}

EvalReport Evaluate(const TreeEnsemble& model, const Dataset& data,
                    std::span<const std::size_t> rows) {
  if (data.labels.empty() && !rows.empty()) {
    throw DataError("evaluation needs a labeled dataset");
  }
  const std::size_t k = model.classes.size();
  EvalReport report;
  report.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (std::size_t r : rows) {
    const int truth = data.labels[r];
    if (truth < 0 || truth >= static_cast<int>(k)) {
      throw SchemaError("row " + std::to_string(r) + " label is not a model class");
    }
    const int pred = PredictMajority(model, data.row(r));
    ++report.confusion[truth][pred];
    if (truth == pred) ++correct;
  }
  report.accuracy =
      rows.empty() ? 0.0
                   : static_cast<double>(correct) / static_cast<double>(rows.size());
  return report;
}

}  // namespace dpg
