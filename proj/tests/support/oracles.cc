#include "support/oracles.h"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>

namespace dpg::testing {

double PrintfRound(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  const double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

namespace {

Predicate Taken(const TreeNode& node, double x, int decimals) {
  const double t = PrintfRound(node.threshold, decimals);
  return x <= node.threshold ? Predicate::Decision(node.feature, Op::kLessEqual, t)
                             : Predicate::Decision(node.feature, Op::kGreater, t);
}

void Walk(const DecisionTree& tree, int id, std::span<const double> x,
          int decimals, std::vector<Predicate>& steps) {
  const TreeNode& node = tree.nodes[id];
  if (node.is_leaf()) {
    steps.push_back(Predicate::Class(node.class_index));
    return;
  }
  steps.push_back(Taken(node, x[node.feature], decimals));
  Walk(tree, x[node.feature] <= node.threshold ? node.left : node.right, x,
       decimals, steps);
}

}  // namespace

std::map<std::pair<Predicate, Predicate>, std::uint64_t> RecountEdges(
    const TreeEnsemble& model, const Dataset& data, int decimals) {
  std::map<std::pair<Predicate, Predicate>, std::uint64_t> counts;
  for (const auto& tree : model.trees) {
    for (std::size_t r = 0; r < data.num_rows; ++r) {
      std::vector<Predicate> steps;
      Walk(tree, tree.root, data.row(r), decimals, steps);
      for (std::size_t i = 1; i < steps.size(); ++i) {
        ++counts[{steps[i - 1], steps[i]}];
      }
    }
  }
  return counts;
}

std::uint64_t RecountSteps(const TreeEnsemble& model, const Dataset& data) {
  std::uint64_t total = 0;
  for (const auto& tree : model.trees) {
    for (std::size_t r = 0; r < data.num_rows; ++r) {
      std::vector<Predicate> steps;
      Walk(tree, tree.root, data.row(r), 2, steps);
      total += steps.size() - 1;
    }
  }
  return total;
}

std::vector<double> BruteBetweenness(const Dpg& graph, bool hops) {
  const std::size_t n = graph.size();
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
  std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : graph.edges) {
    if (e.src == e.dst) continue;
    w[e.src][e.dst] = hops ? 1 : e.weight;
    d[e.src][e.dst] = w[e.src][e.dst];
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

  // sigma[s][t]: shortest s-t paths, counted over last edges u -> t.
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, -1.0));
  std::function<double(std::size_t, std::size_t)> count =
      [&](std::size_t s, std::size_t t) -> double {
    if (s == t) return 1.0;
    if (d[s][t] >= kInf) return 0.0;
    if (sigma[s][t] >= 0.0) return sigma[s][t];
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (w[u][t] > 0 && u != t && d[s][u] < kInf && d[s][u] + w[u][t] == d[s][t]) {
        total += count(s, u);
      }
    }
    return sigma[s][t] = total;
  };

  std::vector<double> bc(n, 0.0);
  if (n < 3) return bc;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t || d[s][t] >= kInf) continue;
      const double st = count(s, t);
      for (std::size_t v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (d[s][v] < kInf && d[v][t] < kInf && d[s][v] + d[v][t] == d[s][t]) {
          bc[v] += count(s, v) * count(v, t) / st;
        }
      }
    }
  for (double& x : bc) x /= static_cast<double>((n - 1) * (n - 2));
  return bc;
}

std::vector<double> DfsReachFraction(const Dpg& graph) {
  const std::size_t n = graph.size();
  std::vector<std::vector<int>> out(n);
  for (const auto& e : graph.edges) out[e.src].push_back(e.dst);
  std::vector<double> frac(n, 0.0);
  if (n < 2) return frac;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::function<void(int)> dfs = [&](int v) {
      seen[v] = true;
      for (int u : out[v])
        if (!seen[u]) dfs(u);
    };
    dfs(static_cast<int>(s));
    std::size_t reached = 0;
    for (std::size_t v = 0; v < n; ++v) reached += seen[v] && v != s;
    frac[s] = static_cast<double>(reached) / static_cast<double>(n - 1);
  }
  return frac;
}

namespace {

ClassConstraints Widen(const Dpg& graph, int class_index,
                       const std::vector<bool>& member) {
  std::map<int, FeatureInterval> by_feature;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const Predicate& p = graph.nodes[v].predicate;
    if (!member[v] || p.is_class()) continue;
    FeatureInterval& iv = by_feature[p.feature];
    iv.feature = p.feature;
    const double inf = std::numeric_limits<double>::infinity();
    if (p.op == Op::kGreater) {
      iv.lower = iv.lower == -inf ? p.threshold : std::min(iv.lower, p.threshold);
    } else if (p.op == Op::kLessEqual) {
      iv.upper = iv.upper == inf ? p.threshold : std::max(iv.upper, p.threshold);
    }
  }
  ClassConstraints cc;
  cc.class_index = class_index;
  for (auto& [f, iv] : by_feature) cc.intervals.push_back(iv);
  return cc;
}

}  // namespace

ClassConstraints ClosureConstraints(const Dpg& graph, int class_index) {
  const std::size_t n = graph.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& e : graph.edges) reach[e.src][e.dst] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  const NodeId target = graph.ClassNode(class_index);
  std::vector<bool> member(n, false);
  for (std::size_t v = 0; v < n; ++v) member[v] = reach[v][target];
  return Widen(graph, class_index, member);
}

ClassConstraints PathEnumConstraints(const Dpg& graph, int class_index) {
  const std::size_t n = graph.size();
  std::vector<std::vector<int>> out(n);
  for (const auto& e : graph.edges) out[e.src].push_back(e.dst);
  const NodeId target = graph.ClassNode(class_index);
  std::vector<bool> member(n, false);
  std::vector<int> path;
  std::vector<bool> on_path(n, false);
  std::function<void(int)> extend = [&](int v) {
    if (v == target) {
      for (int u : path) member[u] = true;
      return;
    }
    for (int u : out[v]) {
      if (on_path[u]) continue;
      on_path[u] = true;
      path.push_back(u);
      extend(u);
      path.pop_back();
      on_path[u] = false;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, static_cast<int>(s));
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[s] = true;
    extend(static_cast<int>(s));
  }
  return Widen(graph, class_index, member);
}

}  // namespace dpg::testing
