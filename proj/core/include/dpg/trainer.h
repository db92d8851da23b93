#ifndef DPG_TRAINER_H_
#define DPG_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dpg/ensemble.h"

namespace dpg {

// Per-node feature subsampling.
struct MaxFeatures {
  enum class Mode { kSqrt, kAll, kCount };
  Mode mode = Mode::kSqrt;
  std::size_t count = 0;  // used by kCount

  // Number of features to examine at each split, at least 1.
  std::size_t Resolve(std::size_t num_features) const;
};

struct TrainConfig {
  std::size_t n_trees = 100;
  std::optional<int> max_depth;
  std::size_t min_samples_split = 2;
  MaxFeatures max_features;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  // Throws SchemaError when n_trees < 1 or min_samples_split < 2.
  void Validate() const;
  Json ToJson() const;
};

struct SplitReport {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

struct EvalReport {
  // confusion[truth][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  double accuracy = 0.0;

  std::size_t total() const;
  Json ToJson(const ClassSchema& classes) const;
};

// Unstratified shuffle split: the first ceil(n * test_fraction) rows of a
// seeded permutation become the test set. Both lists are returned sorted.
// For seeds below 2^32 the permutation is the one numpy's RandomState(seed)
// produces, so the rows match scikit-learn's train_test_split; larger seeds
// are folded to 32 bits.
SplitReport TrainTestSplit(const Dataset& data, double test_fraction,
                           std::uint64_t seed);

// Copy of the selected rows (labels and class labels carried over).
Dataset Subset(const Dataset& data, std::span<const std::size_t> rows);

// Uniform integer in [0, n) with rejection sampling, so results do not depend
// on the standard library's distribution implementations.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n);

// Greedy CART with Gini impurity over `rows` of `data`. Split candidates are
// midpoints between consecutive distinct sorted values; ties go to the lower
// feature index, then the lower threshold.
DecisionTree FitTree(const Dataset& data, std::span<const std::size_t> rows,
                     const TrainConfig& config, std::mt19937_64& rng);

// Bagged forest. Tree i draws from its own stream seeded with seed + i, so
// the result does not depend on how fits are scheduled.
TreeEnsemble FitForest(const Dataset& data, const TrainConfig& config,
                       unsigned threads = 0);

// Mean decrease in impurity, computed by pushing `data` through every tree.
// Sums weighted Gini decreases per feature over all trees and normalizes to
// 1. Returns all zeros when no split reduces impurity.
std::vector<double> FeatureImportanceMdi(const TreeEnsemble& model,
                                         const Dataset& data);

// Confusion matrix of majority-vote predictions over `rows`.
EvalReport Evaluate(const TreeEnsemble& model, const Dataset& data,
                    std::span<const std::size_t> rows);

double GiniImpurity(std::span<const std::size_t> class_counts);

}  // namespace dpg

#endif  // DPG_TRAINER_H_
