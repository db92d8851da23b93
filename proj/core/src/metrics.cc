#include "dpg/metrics.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "dpg/errors.h"
#include "dpg/trainer.h"
#include "parallel.h"

namespace dpg {

std::vector<NodeId> CentralityReport::Top(std::size_t k) const {
  const std::size_t n = std::min(k, ranking.size());
  return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(n)};
}

namespace {

std::vector<NodeId> RankDescending(const std::vector<double>& scores) {
  std::vector<NodeId> ranking(scores.size());
  std::iota(ranking.begin(), ranking.end(), 0);
  std::stable_sort(ranking.begin(), ranking.end(), [&](NodeId a, NodeId b) {
    return scores[a] > scores[b];
  });
  return ranking;
}

// Brandes dependency accumulation for one source, added into `scores`.
// Distances are integer sums of edge lengths, so ties are exact.
void AccumulateFrom(NodeId source, const Adjacency& adj, BcMode mode,
                    std::vector<double>& scores) {
  const std::size_t n = adj.out.size();
  constexpr std::uint64_t kUnseen = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(n, kUnseen);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<bool> settled(n, false);
  std::vector<NodeId> order;
  order.reserve(n);

  using Entry = std::pair<std::uint64_t, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0;
  sigma[source] = 1.0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v] || d != dist[v]) continue;
    settled[v] = true;
    order.push_back(v);
    for (const auto& [w, weight] : adj.out[v]) {
      if (w == v) continue;
      const std::uint64_t nd = d + (mode == BcMode::kHops ? 1 : weight);
      if (nd < dist[w]) {
        dist[w] = nd;
        sigma[w] = sigma[v];
        preds[w].assign(1, v);
        heap.emplace(nd, w);
      } else if (nd == dist[w]) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId w = *it;
    for (NodeId v : preds[w]) {
      delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    }
    if (w != source) scores[w] += delta[w];
  }
}

}  // namespace

CentralityReport BetweennessCentrality(const Dpg& graph, BcMode mode,
                                       unsigned threads) {
  const std::size_t n = graph.size();
  CentralityReport report;
  report.metric = mode == BcMode::kHops ? "bc_hops" : "bc";
  report.scores.assign(n, 0.0);
  if (n >= 3) {
    const Adjacency adj(graph);
    // Fixed-size source chunks reduced in chunk order keep the floating-point
    // sum independent of the thread count.
    constexpr std::size_t kChunk = 64;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(chunks,
                                             std::vector<double>(n, 0.0));
    internal::ParallelFor(chunks, threads, [&](std::size_t c) {
      const std::size_t end = std::min(n, (c + 1) * kChunk);
      for (std::size_t s = c * kChunk; s < end; ++s) {
        AccumulateFrom(static_cast<NodeId>(s), adj, mode, partial[c]);
      }
    });
    const double norm =
        static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (const auto& p : partial) sum += p[v];
      report.scores[v] = sum / norm;
    }
  }
  report.ranking = RankDescending(report.scores);
  return report;
}

namespace {

// |reachable(v)| / (N-1) by breadth-first search.
double ReachableFraction(const Adjacency& adj, NodeId v) {
  const std::size_t n = adj.out.size();
  std::vector<bool> seen(n, false);
  std::queue<NodeId> queue;
  seen[v] = true;
  queue.push(v);
  std::size_t reached = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (const auto& [w, weight] : adj.out[u]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push(w);
      }
    }
  }
  return static_cast<double>(reached) / static_cast<double>(n - 1);
}

// Sum over reached nodes of the mean raw edge weight along the shortest path
// from v, with edge length total_weight / w.
double SumOfPathMeans(const Adjacency& adj, NodeId v, double total_weight) {
  const std::size_t n = adj.out.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::uint64_t> raw(n, 0);  // raw weight along the chosen path
  std::vector<std::size_t> hops(n, 0);
  std::vector<bool> settled(n, false);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[v] = 0.0;
  heap.emplace(0.0, v);
  double sum = 0.0;
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != dist[u]) continue;
    settled[u] = true;
    if (u != v) {
      sum += static_cast<double>(raw[u]) / static_cast<double>(hops[u]);
    }
    for (const auto& [w, weight] : adj.out[u]) {
      if (settled[w]) continue;
      const double nd = d + total_weight / static_cast<double>(weight);
      const std::uint64_t nraw = raw[u] + weight;
      if (nd < dist[w] || (nd == dist[w] && nraw > raw[w])) {
        dist[w] = nd;
        raw[w] = nraw;
        hops[w] = hops[u] + 1;
        heap.emplace(nd, w);
      }
    }
  }
  return sum;
}

}  // namespace

CentralityReport LocalReachingCentrality(const Dpg& graph, LrcMode mode) {
  const std::size_t n = graph.size();
  CentralityReport report;
  report.metric = mode == LrcMode::kWeighted ? "lrc" : "lrc_unweighted";
  report.scores.assign(n, 0.0);
  if (n >= 2) {
    const Adjacency adj(graph);
    std::uint64_t total = 0;
    for (const auto& e : graph.edges) total += e.weight;
    const bool weighted = mode == LrcMode::kWeighted && total > 0;
    const double mean_weight =
        graph.edges.empty() ? 1.0
                            : static_cast<double>(total) /
                                  static_cast<double>(graph.edges.size());
    for (std::size_t v = 0; v < n; ++v) {
      const auto id = static_cast<NodeId>(v);
      report.scores[v] =
          weighted ? SumOfPathMeans(adj, id, static_cast<double>(total)) /
                         mean_weight / static_cast<double>(n - 1)
                   : ReachableFraction(adj, id);
    }
  }
  report.ranking = RankDescending(report.scores);
  return report;
}

namespace {

using Neighbours = std::vector<std::vector<std::pair<NodeId, std::uint64_t>>>;

Neighbours PropagationView(const Dpg& graph, LpaView view) {
  Neighbours nbrs(graph.size());
  if (view == LpaView::kOutgoing) {
    for (const auto& e : graph.edges) {
      if (e.src != e.dst) nbrs[e.src].emplace_back(e.dst, e.weight);
    }
    return nbrs;
  }
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> merged;
  for (const auto& e : graph.edges) {
    if (e.src == e.dst) continue;
    merged[std::minmax(e.src, e.dst)] += e.weight;
  }
  for (const auto& [key, w] : merged) {
    nbrs[key.first].emplace_back(key.second, w);
    nbrs[key.second].emplace_back(key.first, w);
  }
  return nbrs;
}

// Labels tied for the heaviest incident weight, ascending.
std::vector<NodeId> HeaviestLabels(
    const std::vector<std::pair<NodeId, std::uint64_t>>& nbrs,
    const std::vector<NodeId>& labels) {
  std::map<NodeId, std::uint64_t> totals;
  for (const auto& [u, w] : nbrs) totals[labels[u]] += w;
  std::uint64_t top = 0;
  for (const auto& [label, w] : totals) top = std::max(top, w);
  std::vector<NodeId> best;
  for (const auto& [label, w] : totals) {
    if (w == top) best.push_back(label);
  }
  return best;
}

std::size_t DistinctLabels(std::vector<NodeId> labels) {
  std::sort(labels.begin(), labels.end());
  return static_cast<std::size_t>(
      std::unique(labels.begin(), labels.end()) - labels.begin());
}

}  // namespace

CommunityReport DetectCommunities(const Dpg& graph, std::uint64_t seed,
                                  std::size_t max_iters, LpaView view) {
  const std::size_t n = graph.size();
  const Neighbours nbrs = PropagationView(graph, view);
  std::vector<NodeId> labels(n);
  std::iota(labels.begin(), labels.end(), 0);

  CommunityReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  auto holds_heaviest = [&](std::size_t v) {
    if (nbrs[v].empty()) return true;
    const auto best = HeaviestLabels(nbrs[v], labels);
    return std::binary_search(best.begin(), best.end(), labels[v]);
  };

  while (report.sweeps < max_iters) {
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[UniformIndex(rng, i)]);
    }
    for (NodeId v : order) {
      if (nbrs[v].empty()) continue;
      const auto best = HeaviestLabels(nbrs[v], labels);
      if (!std::binary_search(best.begin(), best.end(), labels[v])) {
        labels[v] = best.front();
      }
    }
    ++report.sweeps;
    report.labels_per_sweep.push_back(DistinctLabels(labels));
    bool stable = true;
    for (std::size_t v = 0; v < n && stable; ++v) stable = holds_heaviest(v);
    if (stable) {
      report.converged = true;
      break;
    }
  }

  std::map<NodeId, std::vector<NodeId>> groups;
  for (std::size_t v = 0; v < n; ++v) {
    groups[labels[v]].push_back(static_cast<NodeId>(v));
  }
  for (auto& [label, members] : groups) {
    report.communities.push_back(std::move(members));
  }
  std::sort(report.communities.begin(), report.communities.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return report;
}

void CheckPartition(const CommunityReport& report, const Dpg& graph) {
  std::vector<int> seen(graph.size(), 0);
  for (const auto& community : report.communities) {
    for (NodeId v : community) {
      if (v < 0 || v >= static_cast<NodeId>(graph.size())) {
        throw SchemaError("community member " + std::to_string(v) +
                          " is not a graph node");
      }
      if (seen[v]++) {
        throw SchemaError("node " + std::to_string(v) +
                          " appears in more than one community");
      }
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) {
      throw SchemaError("node " + std::to_string(v) + " is in no community");
    }
  }
}

std::string CommunitySummary::ClassLabel(const ClassSchema& schema) const {
  if (classes.empty()) return "unassigned";
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += ", ";
    const int c = classes[i];
    out += c >= 0 && c < static_cast<int>(schema.size()) ? schema.labels[c]
                                                          : std::to_string(c);
  }
  return out;
}

std::vector<CommunitySummary> CommunityClasses(const CommunityReport& report,
                                               const Dpg& graph) {
  CheckPartition(report, graph);
  std::vector<CommunitySummary> out;
  for (std::size_t i = 0; i < report.communities.size(); ++i) {
    CommunitySummary summary;
    summary.index = i + 1;
    summary.nodes = report.communities[i];
    std::set<int> features;
    for (NodeId v : summary.nodes) {
      const Predicate& p = graph.nodes[v].predicate;
      if (p.is_class()) {
        summary.classes.push_back(p.class_index);
      } else {
        features.insert(p.feature);
      }
    }
    std::sort(summary.classes.begin(), summary.classes.end());
    summary.num_predicates = summary.nodes.size();
    summary.num_features = features.size();
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace dpg
