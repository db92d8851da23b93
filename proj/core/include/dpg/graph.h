#ifndef DPG_GRAPH_H_
#define DPG_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpg/ensemble.h"
#include "dpg/predicate.h"

namespace dpg {

using NodeId = int;

struct DpgNode {
  NodeId id = 0;
  Predicate predicate;
};

struct DpgEdge {
  NodeId src = 0;
  NodeId dst = 0;
  // Number of (tree, sample) traces in which dst immediately follows src.
  std::uint64_t weight = 0;

  friend bool operator==(const DpgEdge&, const DpgEdge&) = default;
};

struct Provenance {
  FeatureSchema features;
  ClassSchema classes;
  int decimals = 2;
  std::size_t samples = 0;
  std::size_t trees = 0;
  Json model_metadata = Json::object();
};

// Decision predicate graph: one node per distinct canonical predicate, one
// node per class label, edges weighted by consecutive-satisfaction counts.
// Edges are sorted by (src, dst) and unique.
struct Dpg {
  std::vector<DpgNode> nodes;
  std::vector<DpgEdge> edges;
  // Traces that start at each node, indexed by node id.
  std::vector<std::uint64_t> source_counts;
  Provenance provenance;
  // Non-fatal findings such as self-loops.
  std::vector<std::string> diagnostics;

  std::size_t size() const { return nodes.size(); }
  std::string Label(NodeId id) const;
  // Node id of the class terminal, or -1.
  NodeId ClassNode(int class_index) const;
  std::vector<NodeId> ClassNodes() const;
  // Sum of source_counts; equals trees x samples for a built graph.
  std::uint64_t TotalTraces() const;
};

// Adjacency lists built from a Dpg edge list. Neighbour lists are sorted by
// node id and carry the edge weight.
struct Adjacency {
  std::vector<std::vector<std::pair<NodeId, std::uint64_t>>> out;
  std::vector<std::vector<std::pair<NodeId, std::uint64_t>>> in;

  explicit Adjacency(const Dpg& graph);
};

// Consecutive step pairs of a trace, in order. Empty for a leaf-only trace.
std::vector<std::pair<Predicate, Predicate>> TraceEdges(const PathTrace& trace);

// Traverses every tree with every row of `data`, canonicalizes predicates and
// aggregates them into a graph. Node ids follow first appearance in
// (tree, sample, step) order; class nodes never reached are appended in class
// order. `threads` = 0 uses all hardware threads; the output is identical for
// any thread count.
Dpg BuildDpg(const TreeEnsemble& model, const Dataset& data,
             const CanonicalizationPolicy& policy, unsigned threads = 0);

// JSON form:
//   {"nodes": [{"id", "label", "kind", ...predicate fields, "source_count"}],
//    "edges": [{"src", "dst", "weight"}],
//    "provenance": {...}}
Json DpgToJson(const Dpg& graph);
Dpg DpgFromJson(const Json& doc);
std::string SerializeDpg(const Dpg& graph);
Dpg ParseDpg(std::string_view text);
Dpg LoadDpg(const std::filesystem::path& path);

}  // namespace dpg

#endif  // DPG_GRAPH_H_
