#ifndef DPG_PREDICATE_H_
#define DPG_PREDICATE_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpg/ensemble.h"

namespace dpg {

enum class Op { kLessEqual, kGreater, kEqual, kNotEqual };

std::string_view OpSymbol(Op op);
// Inverse of OpSymbol; accepts "<=", ">", "=", "!=". Throws ParseError.
Op ParseOp(std::string_view symbol);

enum class PredicateKind { kDecision, kClass };

// A decision (feature, op, threshold-or-categories) or a class terminal.
// The defaulted ordering doubles as the merge key once thresholds are
// canonical.
struct Predicate {
  PredicateKind kind = PredicateKind::kDecision;
  int feature = -1;
  Op op = Op::kLessEqual;
  double threshold = 0.0;
  std::vector<double> categories;  // sorted, for = and !=
  int class_index = -1;

  static Predicate Decision(int feature, Op op, double threshold);
  static Predicate Categorical(int feature, Op op,
                               std::vector<double> categories);
  static Predicate Class(int class_index);

  bool is_class() const { return kind == PredicateKind::kClass; }
  bool is_categorical() const {
    return op == Op::kEqual || op == Op::kNotEqual;
  }

  // True when `x` satisfies the decision. Class predicates always hold.
  bool Holds(std::span<const double> x) const;

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct CanonicalizationPolicy {
  // Number of decimal places thresholds are rounded to (half-even).
  int decimals = 2;
};

// Rounds `value` to `decimals` places with ties to even. Values whose scaled
// magnitude exceeds 2^52 are already integral at that precision and are
// returned unchanged.
double RoundHalfEven(double value, int decimals);

// Threshold rounding and category sorting; class predicates pass through.
// Idempotent.
Predicate CanonicalPredicate(const Predicate& raw,
                             const CanonicalizationPolicy& policy);

// "<feature> <op> <threshold>" with `decimals` fixed digits, or
// "Class <label>".
std::string PredicateLabel(const Predicate& p, const FeatureSchema& features,
                           const ClassSchema& classes, int decimals);

// Fixed-point rendering used by labels and reports.
std::string FormatFixed(double value, int decimals);

// The predicates one sample satisfies on its way through one tree, ending in
// exactly one class predicate.
struct PathTrace {
  std::size_t tree_index = 0;
  std::size_t sample_index = 0;
  std::vector<Predicate> steps;
};

// Follows `x` from the root to a leaf, recording the satisfied predicate at
// every split (canonicalized per `policy`) and the leaf's class predicate.
// Throws TraversalError on a non-finite feature value or a malformed tree.
PathTrace Traverse(const DecisionTree& tree, std::span<const double> x,
                   const CanonicalizationPolicy& policy,
                   const FeatureSchema& features);

}  // namespace dpg

#endif  // DPG_PREDICATE_H_
