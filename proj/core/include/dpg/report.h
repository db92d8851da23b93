#ifndef DPG_REPORT_H_
#define DPG_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "dpg/graph.h"
#include "dpg/metrics.h"

namespace dpg {

// "rank,predicate,score" with one row per node of the top `k`.
std::string CentralityCsv(const Dpg& graph, const CentralityReport& report,
                          std::size_t k);

Json CentralityToJson(const Dpg& graph, const CentralityReport& report,
                      std::size_t k);

// One row per community: community, #predicates, #features, class.
Json CommunityTable(const Dpg& graph, const CommunityReport& report);

struct ReportOptions {
  bool betweenness = true;
  bool reaching = true;
  bool communities = true;
  bool constraints = true;
  std::size_t top_k = 8;
  std::uint64_t seed = 42;
  std::size_t max_iters = 100;
};

// Combined analysis bundle. Always carries "provenance"; each enabled metric
// adds its own section.
Json BuildReport(const Dpg& graph, const ReportOptions& options);

}  // namespace dpg

#endif  // DPG_REPORT_H_
