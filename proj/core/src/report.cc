#include "dpg/report.h"

#include <string>

#include "dpg/constraints.h"
#include "dpg/io.h"

namespace dpg {

std::string CentralityCsv(const Dpg& graph, const CentralityReport& report,
                          std::size_t k) {
  std::string out = "rank,predicate,score\n";
  std::size_t rank = 1;
  for (NodeId v : report.Top(k)) {
    out += std::to_string(rank++) + "," + CsvField(graph.Label(v)) + "," +
           ShortestDouble(report.scores[v]) + "\n";
  }
  return out;
}

Json CentralityToJson(const Dpg& graph, const CentralityReport& report,
                      std::size_t k) {
  Json rows = Json::array();
  std::size_t rank = 1;
  for (NodeId v : report.Top(k)) {
    rows.push_back({{"rank", rank++},
                    {"node", v},
                    {"predicate", graph.Label(v)},
                    {"score", report.scores[v]}});
  }
  return rows;
}

Json CommunityTable(const Dpg& graph, const CommunityReport& report) {
  Json rows = Json::array();
  for (const auto& s : CommunityClasses(report, graph)) {
    rows.push_back({{"community", "Community " + std::to_string(s.index)},
                    {"predicates", s.num_predicates},
                    {"features", s.num_features},
                    {"class", s.ClassLabel(graph.provenance.classes)},
                    {"nodes", s.nodes}});
  }
  return rows;
}

Json BuildReport(const Dpg& graph, const ReportOptions& options) {
  const Provenance& prov = graph.provenance;
  Json bundle = Json::object();
  bundle["provenance"] = {{"nodes", graph.size()},
                          {"edges", graph.edges.size()},
                          {"samples", prov.samples},
                          {"trees", prov.trees},
                          {"decimals", prov.decimals},
                          {"classes", prov.classes.labels},
                          {"model_metadata", prov.model_metadata}};
  if (options.constraints) {
    bundle["constraints"] =
        ConstraintsToJson(ExtractAllConstraints(graph), prov)["classes"];
  }
  if (options.betweenness) {
    bundle["bc_top"] =
        CentralityToJson(graph, BetweennessCentrality(graph), options.top_k);
  }
  if (options.reaching) {
    bundle["lrc_top"] = CentralityToJson(
        graph, LocalReachingCentrality(graph), options.top_k);
  }
  if (options.communities) {
    const auto report = DetectCommunities(graph, options.seed, options.max_iters);
    bundle["communities"] = {{"seed", report.seed},
                             {"sweeps", report.sweeps},
                             {"converged", report.converged},
                             {"table", CommunityTable(graph, report)}};
  }
  return bundle;
}

}  // namespace dpg
