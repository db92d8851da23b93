#include "dpg/dot.h"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace dpg {
namespace {

constexpr std::array<std::string_view, 12> kPalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

}  // namespace

DotDocument ExportDot(const Dpg& graph, const DotOptions& options) {
  std::vector<int> community(graph.size(), -1);
  if (options.communities) {
    CheckPartition(*options.communities, graph);
    for (std::size_t c = 0; c < options.communities->communities.size(); ++c) {
      for (NodeId v : options.communities->communities[c]) {
        community[v] = static_cast<int>(c);
      }
    }
  }

  std::string out = "digraph DPG {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& node : graph.nodes) {
    out += "  " + std::to_string(node.id) + " [label=" +
           Quote(graph.Label(node.id));
    const bool is_class = node.predicate.is_class();
    if (is_class) out += ", shape=ellipse";
    if (options.communities) {
      out += ", style=filled, fillcolor=\"";
      out += kPalette[community[node.id] % kPalette.size()];
      out += '"';
    } else if (is_class && options.highlight_classes) {
      out += ", style=filled, fillcolor=\"#a1d99b\"";
    }
    out += "];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
           " [label=\"" + std::to_string(e.weight) + "\"];\n";
  }
  out += "}\n";
  return {std::move(out)};
}

}  // namespace dpg
