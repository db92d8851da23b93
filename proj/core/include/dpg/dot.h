#ifndef DPG_DOT_H_
#define DPG_DOT_H_

#include <string>

#include "dpg/graph.h"
#include "dpg/metrics.h"

namespace dpg {

struct DotOptions {
  // Fill nodes by community; requires a partition of the graph.
  const CommunityReport* communities = nullptr;
  // Fill class nodes with a fixed colour (ignored when colouring by
  // community).
  bool highlight_classes = true;
};

struct DotDocument {
  std::string text;
};

// Graphviz digraph with one statement per node, in id order, followed by one
// statement per edge labelled with its weight. Class nodes are ellipses,
// decisions boxes. Throws SchemaError when the community report does not
// partition the graph.
DotDocument ExportDot(const Dpg& graph, const DotOptions& options = {});

}  // namespace dpg

#endif  // DPG_DOT_H_
