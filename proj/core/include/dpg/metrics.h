#ifndef DPG_METRICS_H_
#define DPG_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dpg/graph.h"

namespace dpg {

struct CentralityReport {
  std::string metric;
  std::vector<double> scores;   // indexed by node id
  std::vector<NodeId> ranking;  // score descending, ties to lower id

  // Top `k` of the ranking (all nodes when k exceeds the graph).
  std::vector<NodeId> Top(std::size_t k) const;
};

enum class BcMode {
  // Edge frequency is the path length (Dijkstra-based Brandes). This is the
  // default and reproduces the published Iris values.
  kWeightedLength,
  // Every edge has length 1.
  kHops,
};

// Betweenness over directed shortest paths, endpoints excluded, normalized by
// (N-1)(N-2). Graphs with fewer than three nodes score zero everywhere.
CentralityReport BetweennessCentrality(const Dpg& graph,
                                       BcMode mode = BcMode::kWeightedLength,
                                       unsigned threads = 0);

enum class LrcMode { kWeighted, kUnweighted };

// Local reaching centrality.
//
// Unweighted: LRC(v) = |reachable(v)| / (N-1).
//
// Weighted: shortest paths from v use length W / w(e), where W is the total
// edge weight, so frequent edges are short. For each reached node the mean
// raw edge weight along its path is taken; the sum is divided by the mean
// edge weight of the graph and by N-1. Among equally short paths the heavier
// one wins.
CentralityReport LocalReachingCentrality(const Dpg& graph,
                                         LrcMode mode = LrcMode::kWeighted);

struct CommunityReport {
  // Partition of all node ids; each community sorted, communities ordered by
  // their smallest member.
  std::vector<std::vector<NodeId>> communities;
  std::uint64_t seed = 0;
  std::size_t sweeps = 0;
  bool converged = false;
  // Number of distinct labels after each sweep.
  std::vector<std::size_t> labels_per_sweep;
};

enum class LpaView {
  // A node looks at its successors, weighted by edge frequency. Class nodes
  // have none and keep their own label, so labels flow back from the classes.
  kOutgoing,
  // Undirected projection: the weight between u and v is w(u->v) + w(v->u).
  kUndirected,
};

// Asynchronous label propagation. Self-loops are ignored. Each sweep visits
// the nodes in a seeded random order; a node keeps its label when that label
// is among the heaviest neighbour labels and otherwise adopts the smallest
// heaviest label. Stops once every node holds a heaviest label, or after
// `max_iters` sweeps.
CommunityReport DetectCommunities(const Dpg& graph, std::uint64_t seed,
                                  std::size_t max_iters = 100,
                                  LpaView view = LpaView::kOutgoing);

struct CommunitySummary {
  std::size_t index = 0;  // 1-based, in CommunityReport order
  std::vector<NodeId> nodes;
  std::vector<int> classes;  // class indices of member class nodes
  std::size_t num_predicates = 0;  // member nodes, class nodes included
  std::size_t num_features = 0;    // distinct features in member decisions

  // Class labels joined by ", ", or "unassigned".
  std::string ClassLabel(const ClassSchema& classes) const;
};

// Throws SchemaError when `report` does not partition the graph's nodes.
std::vector<CommunitySummary> CommunityClasses(const CommunityReport& report,
                                               const Dpg& graph);

// Throws SchemaError unless `report` covers every node exactly once.
void CheckPartition(const CommunityReport& report, const Dpg& graph);

}  // namespace dpg

#endif  // DPG_METRICS_H_
