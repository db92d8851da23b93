#include "dpg/graph.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "dpg/errors.h"
#include "parallel.h"

namespace dpg {

std::string Dpg::Label(NodeId id) const {
  return PredicateLabel(nodes[id].predicate, provenance.features,
                        provenance.classes, provenance.decimals);
}

NodeId Dpg::ClassNode(int class_index) const {
  for (const auto& node : nodes) {
    if (node.predicate.is_class() &&
        node.predicate.class_index == class_index) {
      return node.id;
    }
  }
  return -1;
}

std::vector<NodeId> Dpg::ClassNodes() const {
  std::vector<NodeId> ids;
  for (const auto& node : nodes) {
    if (node.predicate.is_class()) ids.push_back(node.id);
  }
  return ids;
}

std::uint64_t Dpg::TotalTraces() const {
  return std::accumulate(source_counts.begin(), source_counts.end(),
                         std::uint64_t{0});
}

Adjacency::Adjacency(const Dpg& graph)
    : out(graph.size()), in(graph.size()) {
  // Edges are sorted by (src, dst), so `out` lists come out sorted.
  for (const auto& e : graph.edges) {
    out[e.src].emplace_back(e.dst, e.weight);
    in[e.dst].emplace_back(e.src, e.weight);
  }
  for (auto& list : in) std::sort(list.begin(), list.end());
}

std::vector<std::pair<Predicate, Predicate>> TraceEdges(const PathTrace& trace) {
  std::vector<std::pair<Predicate, Predicate>> pairs;
  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    pairs.emplace_back(trace.steps[i], trace.steps[i + 1]);
  }
  return pairs;
}

namespace {

// Everything one tree contributes, with predicates numbered in the order the
// tree's traces first produced them.
struct TreeAggregate {
  std::vector<Predicate> predicates;
  std::map<Predicate, int> index;
  std::map<std::pair<int, int>, std::uint64_t> edges;
  std::map<int, std::uint64_t> sources;

  int Intern(const Predicate& p) {
    auto [it, inserted] =
        index.emplace(p, static_cast<int>(predicates.size()));
    if (inserted) predicates.push_back(p);
    return it->second;
  }
};

}  // namespace

Dpg BuildDpg(const TreeEnsemble& model, const Dataset& data,
             const CanonicalizationPolicy& policy, unsigned threads) {
  if (policy.decimals < 0) throw SchemaError("decimals must be >= 0");
  if (data.num_features() != model.features.size()) {
    throw SchemaError("dataset has " + std::to_string(data.num_features()) +
                      " columns, model expects " +
                      std::to_string(model.features.size()));
  }
  for (std::size_t f = 0; f < model.features.size(); ++f) {
    if (data.features.names[f] != model.features.names[f]) {
      throw SchemaError("dataset column " + std::to_string(f) + " is '" +
                        data.features.names[f] + "', model expects '" +
                        model.features.names[f] + "'");
    }
  }

  std::vector<TreeAggregate> per_tree(model.trees.size());
  internal::ParallelFor(model.trees.size(), threads, [&](std::size_t t) {
    TreeAggregate& agg = per_tree[t];
    for (std::size_t s = 0; s < data.num_rows; ++s) {
      PathTrace trace;
      try {
        trace = Traverse(model.trees[t], data.row(s), policy, model.features);
      } catch (const TraversalError& e) {
        throw TraversalError("tree " + std::to_string(t) + ", sample " +
                             std::to_string(s) + ": " + e.what());
      }
      int prev = agg.Intern(trace.steps.front());
      ++agg.sources[prev];
      for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        const int cur = agg.Intern(trace.steps[i]);
        ++agg.edges[{prev, cur}];
        prev = cur;
      }
    }
  });

  Dpg graph;
  std::map<Predicate, NodeId> ids;
  auto intern = [&](const Predicate& p) {
    auto [it, inserted] = ids.emplace(p, static_cast<NodeId>(graph.nodes.size()));
    if (inserted) graph.nodes.push_back({it->second, p});
    return it->second;
  };
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> edges;
  std::map<NodeId, std::uint64_t> sources;
  for (const auto& agg : per_tree) {
    std::vector<NodeId> global(agg.predicates.size());
    for (std::size_t i = 0; i < agg.predicates.size(); ++i) {
      global[i] = intern(agg.predicates[i]);
    }
    for (const auto& [key, w] : agg.edges) {
      edges[{global[key.first], global[key.second]}] += w;
    }
    for (const auto& [local, n] : agg.sources) sources[global[local]] += n;
  }
  for (int c = 0; c < static_cast<int>(model.classes.size()); ++c) {
    intern(Predicate::Class(c));
  }

  graph.edges.reserve(edges.size());
  for (const auto& [key, w] : edges) {
    graph.edges.push_back({key.first, key.second, w});
  }
  graph.source_counts.assign(graph.nodes.size(), 0);
  for (const auto& [id, n] : sources) graph.source_counts[id] = n;

  graph.provenance.features = model.features;
  graph.provenance.classes = model.classes;
  graph.provenance.decimals = policy.decimals;
  graph.provenance.samples = data.num_rows;
  graph.provenance.trees = model.trees.size();
  graph.provenance.model_metadata = model.metadata;

  for (const auto& e : graph.edges) {
    if (e.src == e.dst) {
      graph.diagnostics.push_back("warning: self-loop on node " +
                                  std::to_string(e.src) + " (" +
                                  graph.Label(e.src) + ")");
    }
  }
  return graph;
}

}  // namespace dpg
