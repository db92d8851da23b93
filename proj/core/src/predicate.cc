#include "dpg/predicate.h"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "dpg/errors.h"

namespace dpg {

std::string_view OpSymbol(Op op) {
  switch (op) {
    case Op::kLessEqual: return "<=";
    case Op::kGreater: return ">";
    case Op::kEqual: return "=";
    case Op::kNotEqual: return "!=";
  }
  return "?";
}

Op ParseOp(std::string_view symbol) {
  if (symbol == "<=") return Op::kLessEqual;
  if (symbol == ">") return Op::kGreater;
  if (symbol == "=") return Op::kEqual;
  if (symbol == "!=") return Op::kNotEqual;
  throw ParseError("unknown operator '" + std::string(symbol) + "'");
}

Predicate Predicate::Decision(int feature, Op op, double threshold) {
  Predicate p;
  p.kind = PredicateKind::kDecision;
  p.feature = feature;
  p.op = op;
  p.threshold = threshold;
  return p;
}

Predicate Predicate::Categorical(int feature, Op op,
                                 std::vector<double> categories) {
  Predicate p;
  p.kind = PredicateKind::kDecision;
  p.feature = feature;
  p.op = op;
  p.categories = std::move(categories);
  return p;
}

Predicate Predicate::Class(int class_index) {
  Predicate p;
  p.kind = PredicateKind::kClass;
  p.class_index = class_index;
  return p;
}

bool Predicate::Holds(std::span<const double> x) const {
  if (is_class()) return true;
  const double v = x[feature];
  switch (op) {
    case Op::kLessEqual: return v <= threshold;
    case Op::kGreater: return v > threshold;
    case Op::kEqual:
      return std::find(categories.begin(), categories.end(), v) !=
             categories.end();
    case Op::kNotEqual:
      return std::find(categories.begin(), categories.end(), v) ==
             categories.end();
  }
  return false;
}

double RoundHalfEven(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  const long double scale = std::pow(10.0L, decimals);
  const long double scaled = static_cast<long double>(value) * scale;
  if (std::fabs(scaled) >= 4503599627370496.0L) return value;  // 2^52
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const long double rounded = std::nearbyint(scaled);
  std::fesetround(saved);
  // Both operands are exact doubles, so the quotient is the double nearest
  // to the decimal value.
  const double result =
      static_cast<double>(rounded) / static_cast<double>(scale);
  return result == 0.0 ? 0.0 : result;  // fold -0.0
}

Predicate CanonicalPredicate(const Predicate& raw,
                             const CanonicalizationPolicy& policy) {
  Predicate p = raw;
  if (p.is_class()) return p;
  if (p.is_categorical()) {
    std::sort(p.categories.begin(), p.categories.end());
    p.categories.erase(std::unique(p.categories.begin(), p.categories.end()),
                       p.categories.end());
    p.threshold = 0.0;
  } else {
    p.threshold = RoundHalfEven(p.threshold, policy.decimals);
    p.categories.clear();
  }
  return p;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out = buf;
  if (out.front() == '-' &&
      out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string PredicateLabel(const Predicate& p, const FeatureSchema& features,
                           const ClassSchema& classes, int decimals) {
  if (p.is_class()) {
    const bool known =
        p.class_index >= 0 && p.class_index < static_cast<int>(classes.size());
    return "Class " + (known ? classes.labels[p.class_index]
                             : std::to_string(p.class_index));
  }
  std::string out =
      p.feature >= 0 && p.feature < static_cast<int>(features.size())
          ? features.names[p.feature]
          : "f" + std::to_string(p.feature);
  out += ' ';
  out += OpSymbol(p.op);
  out += ' ';
  if (p.is_categorical()) {
    out += '{';
    for (std::size_t i = 0; i < p.categories.size(); ++i) {
      if (i) out += ',';
      out += FormatFixed(p.categories[i], 0);
    }
    out += '}';
  } else {
    out += FormatFixed(p.threshold, decimals);
  }
  return out;
}

PathTrace Traverse(const DecisionTree& tree, std::span<const double> x,
                   const CanonicalizationPolicy& policy,
                   const FeatureSchema& features) {
  if (x.size() != features.size()) {
    throw TraversalError("sample has " + std::to_string(x.size()) +
                         " values, schema has " +
                         std::to_string(features.size()));
  }
  PathTrace trace;
  int id = tree.root;
  for (std::size_t guard = 0; guard <= tree.nodes.size(); ++guard) {
    if (id < 0 || id >= static_cast<int>(tree.nodes.size())) break;
    const TreeNode& node = tree.nodes[id];
    if (node.is_leaf()) {
      trace.steps.push_back(Predicate::Class(node.class_index));
      return trace;
    }
    const double v = x[node.feature];
    if (!std::isfinite(v)) {
      throw TraversalError("non-finite value for feature '" +
                           features.names[node.feature] + "'");
    }
    Predicate step;
    bool go_left;
    if (node.categories.empty()) {
      go_left = v <= node.threshold;
      step = Predicate::Decision(node.feature,
                                 go_left ? Op::kLessEqual : Op::kGreater,
                                 node.threshold);
    } else {
      go_left = std::find(node.categories.begin(), node.categories.end(), v) !=
                node.categories.end();
      step = Predicate::Categorical(node.feature,
                                    go_left ? Op::kEqual : Op::kNotEqual,
                                    node.categories);
    }
    trace.steps.push_back(CanonicalPredicate(step, policy));
    id = go_left ? node.left : node.right;
  }
  throw TraversalError("tree walk did not reach a leaf");
}

}  // namespace dpg
