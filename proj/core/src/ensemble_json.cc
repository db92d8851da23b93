#include "dpg/ensemble_json.h"

#include <string>

#include "dpg/errors.h"
#include "dpg/io.h"

namespace dpg {
namespace {

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing \"" + key + "\"");
  }
  return *it;
}

int IntField(const Json& obj, const char* key, const std::string& where) {
  const Json& v = Field(obj, key, where);
  if (!v.is_number_integer()) {
    throw ParseError(where + ": \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

TreeNode NodeFromJson(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": node must be an object");
  TreeNode node;
  node.id = IntField(j, "id", where);
  const std::string node_where = where + " node " + std::to_string(node.id);
  const Json& kind = Field(j, "kind", node_where);
  if (kind == "leaf") {
    node.kind = NodeKind::kLeaf;
    node.class_index = IntField(j, "class", node_where);
    return node;
  }
  if (kind != "split") {
    throw ParseError(node_where + ": kind must be \"split\" or \"leaf\"");
  }
  node.kind = NodeKind::kSplit;
  node.feature = IntField(j, "feature", node_where);
  // A split may omit a child; validation reports it with tree/node ids.
  node.left = j.contains("left") ? IntField(j, "left", node_where) : kNoChild;
  node.right = j.contains("right") ? IntField(j, "right", node_where) : kNoChild;
  if (auto it = j.find("values"); it != j.end()) {
    if (!it->is_array()) throw ParseError(node_where + ": values must be a list");
    for (const auto& v : *it) {
      if (!v.is_number()) throw ParseError(node_where + ": non-numeric category");
      node.categories.push_back(v.get<double>());
    }
  } else {
    const Json& t = Field(j, "threshold", node_where);
    if (!t.is_number()) throw ParseError(node_where + ": threshold must be a number");
    node.threshold = t.get<double>();
  }
  return node;
}

}  // namespace

TreeEnsemble EnsembleFromJson(const Json& doc) {
  if (!doc.is_object()) throw ParseError("ensemble: top level must be an object");
  TreeEnsemble model;
  for (const auto& f : Field(doc, "features", "ensemble")) {
    const Json& name = Field(f, "name", "feature");
    if (!name.is_string()) throw ParseError("feature: name must be a string");
    model.features.names.push_back(name.get<std::string>());
    const std::string kind = f.value("kind", "numeric");
    if (kind == "numeric") {
      model.features.kinds.push_back(FeatureKind::kNumeric);
    } else if (kind == "categorical") {
      model.features.kinds.push_back(FeatureKind::kCategorical);
    } else {
      throw ParseError("feature '" + name.get<std::string>() +
                       "': unknown kind '" + kind + "'");
    }
  }
  for (const auto& c : Field(doc, "classes", "ensemble")) {
    if (c.is_string()) {
      model.classes.labels.push_back(c.get<std::string>());
    } else if (c.is_number_integer()) {
      model.classes.labels.push_back(std::to_string(c.get<long long>()));
    } else {
      throw ParseError("classes: labels must be strings or integers");
    }
  }
  const Json& trees = Field(doc, "trees", "ensemble");
  if (!trees.is_array()) throw ParseError("ensemble: trees must be a list");
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const std::string where = "tree " + std::to_string(t);
    DecisionTree tree;
    tree.root = IntField(trees[t], "root", where);
    for (const auto& n : Field(trees[t], "nodes", where)) {
      tree.nodes.push_back(NodeFromJson(n, where));
    }
    model.trees.push_back(std::move(tree));
  }
  if (auto it = doc.find("metadata"); it != doc.end()) model.metadata = *it;
  return model;
}

Json EnsembleToJson(const TreeEnsemble& model) {
  Json doc = Json::object();
  Json features = Json::array();
  for (std::size_t i = 0; i < model.features.size(); ++i) {
    features.push_back(
        {{"name", model.features.names[i]},
         {"kind", model.features.kinds[i] == FeatureKind::kCategorical
                      ? "categorical"
                      : "numeric"}});
  }
  doc["features"] = std::move(features);
  doc["classes"] = model.classes.labels;
  Json trees = Json::array();
  for (const auto& tree : model.trees) {
    Json nodes = Json::array();
    for (const auto& node : tree.nodes) {
      Json n = Json::object();
      n["id"] = node.id;
      if (node.is_leaf()) {
        n["kind"] = "leaf";
        n["class"] = node.class_index;
      } else {
        n["kind"] = "split";
        n["feature"] = node.feature;
        if (node.categories.empty()) {
          n["threshold"] = node.threshold;
        } else {
          n["values"] = node.categories;
        }
        n["left"] = node.left;
        n["right"] = node.right;
      }
      nodes.push_back(std::move(n));
    }
    trees.push_back({{"root", tree.root}, {"nodes", std::move(nodes)}});
  }
  doc["trees"] = std::move(trees);
  doc["metadata"] = model.metadata;
  return doc;
}

TreeEnsemble ParseEnsemble(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("ensemble JSON: ") + e.what());
  }
  TreeEnsemble model;
  try {
    model = EnsembleFromJson(doc);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("ensemble JSON: ") + e.what());
  }
  const auto violations = ValidateEnsemble(model);
  if (!violations.empty()) {
    std::string msg = "invalid ensemble:";
    for (const auto& v : violations) msg += "\n  " + v.ToString();
    throw SchemaError(msg);
  }
  return model;
}

TreeEnsemble LoadEnsemble(const std::filesystem::path& path) {
  return ParseEnsemble(ReadFile(path));
}

std::string SerializeEnsemble(const TreeEnsemble& model) {
  return EnsembleToJson(model).dump(2) + "\n";
}

}  // namespace dpg
