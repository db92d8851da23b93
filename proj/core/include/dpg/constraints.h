#ifndef DPG_CONSTRAINTS_H_
#define DPG_CONSTRAINTS_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dpg/graph.h"

namespace dpg {

// lower < x <= upper on one feature. Categorical predicates contribute
// include/exclude code sets instead (experimental).
struct FeatureInterval {
  int feature = -1;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::optional<std::set<double>> include;
  std::set<double> exclude;

  bool Contains(double v) const;
  // Both bounds finite and lower >= upper: no value can match.
  bool Empty() const { return lower >= upper; }

  friend bool operator==(const FeatureInterval&,
                         const FeatureInterval&) = default;
};

struct ClassConstraints {
  int class_index = -1;
  std::vector<FeatureInterval> intervals;  // sorted by feature, one each

  friend bool operator==(const ClassConstraints&,
                         const ClassConstraints&) = default;
};

// Decision nodes with a directed path to the class node, ascending.
// Throws SchemaError for a class the graph does not contain.
std::vector<NodeId> ReachableToClass(const Dpg& graph, int class_index);

// Widest interval per feature over the predicates reaching the class: the
// lower bound is the smallest threshold among (f > t), the upper bound the
// largest among (f <= t); a missing side is infinite.
ClassConstraints ExtractConstraints(const Dpg& graph, int class_index);

// All classes in class-index order.
std::vector<ClassConstraints> ExtractAllConstraints(const Dpg& graph);

bool ConstraintMatch(std::span<const double> x, const ClassConstraints& cc);

struct ConstraintEvaluation {
  int class_index = -1;
  std::size_t class_rows = 0;    // rows labeled with the class
  std::size_t matched = 0;       // ... of which satisfy the constraints
  std::size_t leakage = 0;       // rows of other classes that also match
  double recall = 0.0;           // matched / class_rows (1 when no rows)

  Json ToJson() const;
};

// Throws DataError on unlabeled data.
ConstraintEvaluation EvaluateConstraints(const Dataset& data,
                                         std::span<const std::size_t> rows,
                                         const ClassConstraints& cc);

// {"classes": [{"class": label, "class_index": i,
//               "constraints": [{"feature", "feature_index", "lower",
//                                "upper"}]}]}
// Infinite bounds are written as null.
Json ConstraintsToJson(const std::vector<ClassConstraints>& all,
                       const Provenance& provenance);

// "5.25 < sepal length (cm) <= 6.05", "petal width (cm) <= 1.65".
std::string FormatInterval(const FeatureInterval& interval,
                           const FeatureSchema& features, int decimals);

}  // namespace dpg

#endif  // DPG_CONSTRAINTS_H_
