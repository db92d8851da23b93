#include <algorithm>
#include <string>

#include "dpg/errors.h"
#include "dpg/graph.h"
#include "dpg/io.h"

namespace dpg {
namespace {

Json FeaturesToJson(const FeatureSchema& features) {
  Json out = Json::array();
  for (std::size_t i = 0; i < features.size(); ++i) {
    out.push_back({{"name", features.names[i]},
                   {"kind", features.kinds[i] == FeatureKind::kCategorical
                                ? "categorical"
                                : "numeric"}});
  }
  return out;
}

FeatureSchema FeaturesFromJson(const Json& j) {
  FeatureSchema features;
  for (const auto& f : j) {
    features.names.push_back(f.at("name").get<std::string>());
    features.kinds.push_back(f.value("kind", "numeric") == "categorical"
                                 ? FeatureKind::kCategorical
                                 : FeatureKind::kNumeric);
  }
  return features;
}

}  // namespace

Json DpgToJson(const Dpg& graph) {
  Json nodes = Json::array();
  for (const auto& node : graph.nodes) {
    const Predicate& p = node.predicate;
    Json n = Json::object();
    n["id"] = node.id;
    n["label"] = graph.Label(node.id);
    if (p.is_class()) {
      n["kind"] = "class";
      n["class"] = p.class_index;
    } else {
      n["kind"] = "decision";
      n["feature"] = p.feature;
      n["op"] = std::string(OpSymbol(p.op));
      if (p.is_categorical()) {
        n["values"] = p.categories;
      } else {
        n["threshold"] = p.threshold;
      }
    }
    n["source_count"] = graph.source_counts.empty()
                            ? std::uint64_t{0}
                            : graph.source_counts[node.id];
    nodes.push_back(std::move(n));
  }
  Json edges = Json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"weight", e.weight}});
  }
  const Provenance& prov = graph.provenance;
  Json provenance = {{"features", FeaturesToJson(prov.features)},
                     {"classes", prov.classes.labels},
                     {"decimals", prov.decimals},
                     {"samples", prov.samples},
                     {"trees", prov.trees},
                     {"model_metadata", prov.model_metadata}};
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"provenance", std::move(provenance)},
          {"diagnostics", graph.diagnostics}};
}

Dpg DpgFromJson(const Json& doc) {
  Dpg graph;
  try {
    const Json& prov = doc.at("provenance");
    graph.provenance.features = FeaturesFromJson(prov.at("features"));
    graph.provenance.classes.labels =
        prov.at("classes").get<std::vector<std::string>>();
    graph.provenance.decimals = prov.at("decimals").get<int>();
    graph.provenance.samples = prov.at("samples").get<std::size_t>();
    graph.provenance.trees = prov.at("trees").get<std::size_t>();
    if (auto it = prov.find("model_metadata"); it != prov.end()) {
      graph.provenance.model_metadata = *it;
    }

    for (const auto& n : doc.at("nodes")) {
      DpgNode node;
      node.id = n.at("id").get<NodeId>();
      if (node.id != static_cast<NodeId>(graph.nodes.size())) {
        throw SchemaError("DPG node ids must be 0..N-1 in order; found " +
                          std::to_string(node.id));
      }
      const std::string kind = n.at("kind").get<std::string>();
      if (kind == "class") {
        node.predicate = Predicate::Class(n.at("class").get<int>());
      } else if (kind == "decision") {
        const Op op = ParseOp(n.at("op").get<std::string>());
        const int feature = n.at("feature").get<int>();
        if (op == Op::kEqual || op == Op::kNotEqual) {
          node.predicate = Predicate::Categorical(
              feature, op, n.at("values").get<std::vector<double>>());
        } else {
          node.predicate =
              Predicate::Decision(feature, op, n.at("threshold").get<double>());
        }
      } else {
        throw ParseError("unknown DPG node kind '" + kind + "'");
      }
      graph.nodes.push_back(std::move(node));
      graph.source_counts.push_back(n.value("source_count", std::uint64_t{0}));
    }

    const auto n = static_cast<NodeId>(graph.nodes.size());
    for (const auto& e : doc.at("edges")) {
      DpgEdge edge{e.at("src").get<NodeId>(), e.at("dst").get<NodeId>(),
                   e.at("weight").get<std::uint64_t>()};
      if (edge.src < 0 || edge.src >= n || edge.dst < 0 || edge.dst >= n) {
        throw SchemaError("DPG edge references unknown node");
      }
      if (graph.nodes[edge.src].predicate.is_class()) {
        throw SchemaError("DPG edge leaves class node " +
                          std::to_string(edge.src));
      }
      if (edge.weight == 0) throw SchemaError("DPG edge with zero weight");
      graph.edges.push_back(edge);
    }
    std::sort(graph.edges.begin(), graph.edges.end(),
              [](const DpgEdge& a, const DpgEdge& b) {
                return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
              });
    for (std::size_t i = 1; i < graph.edges.size(); ++i) {
      if (graph.edges[i].src == graph.edges[i - 1].src &&
          graph.edges[i].dst == graph.edges[i - 1].dst) {
        throw SchemaError("duplicate DPG edge");
      }
    }
    if (auto it = doc.find("diagnostics"); it != doc.end()) {
      graph.diagnostics = it->get<std::vector<std::string>>();
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("DPG JSON: ") + e.what());
  }
  return graph;
}

std::string SerializeDpg(const Dpg& graph) {
  return DpgToJson(graph).dump(2) + "\n";
}

Dpg ParseDpg(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("DPG JSON: ") + e.what());
  }
  return DpgFromJson(doc);
}

Dpg LoadDpg(const std::filesystem::path& path) {
  return ParseDpg(ReadFile(path));
}

}  // namespace dpg
