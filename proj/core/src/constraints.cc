#include "dpg/constraints.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "dpg/errors.h"

namespace dpg {

bool FeatureInterval::Contains(double v) const {
  if (!(v > lower && v <= upper)) return false;
  if (include && !include->contains(v)) return false;
  return !exclude.contains(v);
}

std::vector<NodeId> ReachableToClass(const Dpg& graph, int class_index) {
  const NodeId target = graph.ClassNode(class_index);
  if (target < 0) {
    throw SchemaError("class " + std::to_string(class_index) +
                      " has no node in the graph");
  }
  const Adjacency adj(graph);
  std::vector<bool> seen(graph.size(), false);
  std::queue<NodeId> queue;
  seen[target] = true;
  queue.push(target);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    for (const auto& [u, w] : adj.in[v]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push(u);
      }
    }
  }
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (seen[v] && !graph.nodes[v].predicate.is_class()) {
      out.push_back(static_cast<NodeId>(v));
    }
  }
  return out;
}

ClassConstraints ExtractConstraints(const Dpg& graph, int class_index) {
  ClassConstraints cc;
  cc.class_index = class_index;
  std::map<int, FeatureInterval> by_feature;
  std::map<int, std::vector<std::set<double>>> excludes;
  for (NodeId v : ReachableToClass(graph, class_index)) {
    const Predicate& p = graph.nodes[v].predicate;
    FeatureInterval& iv = by_feature[p.feature];
    iv.feature = p.feature;
    switch (p.op) {
      case Op::kGreater:
        // First lower bound replaces -inf; later ones keep the minimum.
        iv.lower = std::isinf(iv.lower) ? p.threshold
                                        : std::min(iv.lower, p.threshold);
        break;
      case Op::kLessEqual:
        iv.upper = std::isinf(iv.upper) ? p.threshold
                                        : std::max(iv.upper, p.threshold);
        break;
      case Op::kEqual:
        if (!iv.include) iv.include.emplace();
        iv.include->insert(p.categories.begin(), p.categories.end());
        break;
      case Op::kNotEqual:
        excludes[p.feature].emplace_back(p.categories.begin(),
                                         p.categories.end());
        break;
    }
  }
  // The widest exclusion is what every != predicate agrees on.
  for (auto& [feature, sets] : excludes) {
    std::set<double> common = sets.front();
    for (const auto& s : sets) {
      std::erase_if(common, [&](double v) { return !s.contains(v); });
    }
    by_feature[feature].exclude = std::move(common);
  }
  for (auto& [feature, iv] : by_feature) cc.intervals.push_back(std::move(iv));
  return cc;
}

std::vector<ClassConstraints> ExtractAllConstraints(const Dpg& graph) {
  std::vector<ClassConstraints> all;
  for (int c = 0; c < static_cast<int>(graph.provenance.classes.size()); ++c) {
    if (graph.ClassNode(c) >= 0) all.push_back(ExtractConstraints(graph, c));
  }
  return all;
}

bool ConstraintMatch(std::span<const double> x, const ClassConstraints& cc) {
  return std::all_of(cc.intervals.begin(), cc.intervals.end(),
                     [&](const FeatureInterval& iv) {
                       return iv.Contains(x[iv.feature]);
                     });
}

Json ConstraintEvaluation::ToJson() const {
  return {{"class_index", class_index},
          {"class_rows", class_rows},
          {"matched", matched},
          {"leakage", leakage},
          {"recall", recall}};
}

ConstraintEvaluation EvaluateConstraints(const Dataset& data,
                                         std::span<const std::size_t> rows,
                                         const ClassConstraints& cc) {
  if (data.labels.empty() && data.num_rows > 0) {
    throw DataError("constraint evaluation needs a labeled dataset");
  }
  ConstraintEvaluation eval;
  eval.class_index = cc.class_index;
  for (std::size_t r : rows) {
    const bool match = ConstraintMatch(data.row(r), cc);
    if (data.labels[r] == cc.class_index) {
      ++eval.class_rows;
      if (match) ++eval.matched;
    } else if (match) {
      ++eval.leakage;
    }
  }
  eval.recall = eval.class_rows == 0
                    ? 1.0
                    : static_cast<double>(eval.matched) /
                          static_cast<double>(eval.class_rows);
  return eval;
}

Json ConstraintsToJson(const std::vector<ClassConstraints>& all,
                       const Provenance& provenance) {
  auto bound = [](double v) { return std::isinf(v) ? Json(nullptr) : Json(v); };
  Json classes = Json::array();
  for (const auto& cc : all) {
    Json list = Json::array();
    for (const auto& iv : cc.intervals) {
      Json item = {{"feature", provenance.features.names[iv.feature]},
                   {"feature_index", iv.feature},
                   {"lower", bound(iv.lower)},
                   {"upper", bound(iv.upper)}};
      if (iv.include) item["include"] = std::vector<double>(iv.include->begin(), iv.include->end());
      if (!iv.exclude.empty()) item["exclude"] = std::vector<double>(iv.exclude.begin(), iv.exclude.end());
      item["text"] = FormatInterval(iv, provenance.features, provenance.decimals);
      list.push_back(std::move(item));
    }
    classes.push_back({{"class", provenance.classes.labels[cc.class_index]},
                       {"class_index", cc.class_index},
                       {"constraints", std::move(list)}});
  }
  return {{"classes", std::move(classes)}};
}

std::string FormatInterval(const FeatureInterval& iv,
                           const FeatureSchema& features, int decimals) {
  const std::string& name = features.names[iv.feature];
  std::string out;
  if (!std::isinf(iv.lower)) out += FormatFixed(iv.lower, decimals) + " < ";
  out += name;
  if (!std::isinf(iv.upper)) out += " <= " + FormatFixed(iv.upper, decimals);
  auto codes = [](const auto& set) {
    std::string s = "{";
    bool first = true;
    for (double v : set) {
      if (!first) s += ",";
      s += FormatFixed(v, 0);
      first = false;
    }
    return s + "}";
  };
  if (iv.include) out += " in " + codes(*iv.include);
  if (!iv.exclude.empty()) out += " not in " + codes(iv.exclude);
  return out;
}

}  // namespace dpg
