#include "cli.h"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpg/constraints.h"
#include "dpg/dot.h"
#include "dpg/ensemble_json.h"
#include "dpg/errors.h"
#include "dpg/graph.h"
#include "dpg/io.h"
#include "dpg/manifest.h"
#include "dpg/metrics.h"
#include "dpg/report.h"
#include "dpg/trainer.h"

namespace dpg::cli {
namespace {

namespace fs = std::filesystem;

struct TrainArgs {
  std::string data;
  std::size_t trees = 100;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  std::string out;
  std::optional<int> max_depth;
  std::string max_features = "sqrt";
  bool no_bootstrap = false;
  unsigned threads = 0;
};

struct BuildArgs {
  std::string model;
  std::string data;
  int precision = 2;
  std::string out;
  unsigned threads = 0;
};

struct MetricsArgs {
  std::string dpg;
  std::string metric = "bc";
  std::size_t top = 10;
  std::string out;
};

struct CommunitiesArgs {
  std::string dpg;
  std::uint64_t seed = 42;
  std::size_t max_iters = 100;
  std::string view = "outgoing";
  std::string out;
};

struct ConstraintsArgs {
  std::string dpg;
  std::string out;
  std::string evaluate;
};

struct DotArgs {
  std::string dpg;
  std::string out;
  std::string communities;
  bool no_highlight = false;
};

struct ReportArgs {
  std::string dpg;
  std::string out;
  std::size_t top = 8;
  std::uint64_t seed = 42;
  std::vector<std::string> metrics = {"bc", "lrc", "communities",
                                      "constraints"};
};

// DPG_SEED, when set to an integer, replaces any --seed value.
std::uint64_t EffectiveSeed(std::uint64_t flag_value) {
  const char* env = std::getenv("DPG_SEED");
  if (env == nullptr || *env == '\0') return flag_value;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw DataError(std::string("DPG_SEED is not an integer: '") + env + "'");
  }
}

// "dir/model.json" + ".eval.json" -> "dir/model.eval.json"
fs::path Sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out.parent_path() / out.stem();
  p += suffix;
  return p;
}

// Runs `body`, then writes the manifest beside the first output.
void RunWithManifest(const std::string& command,
                     const std::vector<std::string>& inputs, const Json& config,
                     const std::function<std::vector<std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.command = command;
  manifest.inputs = inputs;
  manifest.config = config;
  manifest.outputs = body();
  manifest.digest = ComputeDigest(command, config, inputs);
  manifest.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  WriteFileAtomic(ManifestPathFor(manifest.outputs.front()),
                  manifest.ToJson().dump(2) + "\n");
}

MaxFeatures ParseMaxFeatures(const std::string& text) {
  MaxFeatures mf;
  if (text == "sqrt") {
    mf.mode = MaxFeatures::Mode::kSqrt;
  } else if (text == "all") {
    mf.mode = MaxFeatures::Mode::kAll;
  } else {
    mf.mode = MaxFeatures::Mode::kCount;
    try {
      mf.count = std::stoul(text);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--max-features",
                                 "expected sqrt, all or a count");
    }
  }
  return mf;
}

void RunTrain(const TrainArgs& a, std::ostream& out) {
  TrainConfig cfg;
  cfg.n_trees = a.trees;
  cfg.seed = EffectiveSeed(a.seed);
  cfg.max_depth = a.max_depth;
  cfg.max_features = ParseMaxFeatures(a.max_features);
  cfg.bootstrap = !a.no_bootstrap;
  cfg.Validate();

  Json config = cfg.ToJson();
  config["test_fraction"] = a.test_fraction;
  RunWithManifest("train", {a.data}, config, [&] {
    const Dataset data = LoadCsv(a.data);
    const SplitReport split = TrainTestSplit(data, a.test_fraction, cfg.seed);
    const Dataset train = Subset(data, split.train);
    const Dataset test = Subset(data, split.test);
    TreeEnsemble model = FitForest(train, cfg, a.threads);
    model.metadata["test_fraction"] = a.test_fraction;
    model.metadata["data"] = fs::path(a.data).filename().string();

    std::vector<std::size_t> test_rows(test.num_rows);
    std::iota(test_rows.begin(), test_rows.end(), 0);
    std::vector<std::size_t> train_rows(train.num_rows);
    std::iota(train_rows.begin(), train_rows.end(), 0);
    const EvalReport eval = Evaluate(model, test, test_rows);
    const EvalReport train_eval = Evaluate(model, train, train_rows);
    const auto mdi = FeatureImportanceMdi(model, train);

    Json importance = Json::object();
    for (std::size_t f = 0; f < mdi.size(); ++f) {
      importance[model.features.names[f]] = mdi[f];
    }
    Json report = {{"split", {{"train_rows", split.train.size()},
                              {"test_rows", split.test.size()},
                              {"test_fraction", a.test_fraction},
                              {"seed", cfg.seed},
                              {"test_indices", split.test}}},
                   {"test", eval.ToJson(model.classes)},
                   {"train_accuracy", train_eval.accuracy},
                   {"feature_importance_mdi", importance}};

    const fs::path model_path = a.out;
    const fs::path eval_path = Sibling(model_path, ".eval.json");
    const fs::path train_path = Sibling(model_path, ".train.csv");
    const fs::path test_path = Sibling(model_path, ".test.csv");
    WriteFileAtomic(model_path, SerializeEnsemble(model));
    WriteFileAtomic(eval_path, report.dump(2) + "\n");
    WriteFileAtomic(train_path, DatasetToCsv(train));
    WriteFileAtomic(test_path, DatasetToCsv(test));
    out << "trained " << model.trees.size() << " trees on " << train.num_rows
        << " rows; test accuracy " << eval.accuracy << " on " << test.num_rows
        << " rows\n";
    return std::vector<std::string>{model_path.string(), eval_path.string(),
                                    train_path.string(), test_path.string()};
  });
}

void RunBuild(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  Json config = {{"precision", a.precision}};
  RunWithManifest("build", {a.model, a.data}, config, [&] {
    const TreeEnsemble model = LoadEnsemble(a.model);
    const Dataset data = LoadCsv(a.data);
    const Dpg graph = BuildDpg(model, data, {a.precision}, a.threads);
    for (const auto& d : graph.diagnostics) err << d << "\n";
    WriteFileAtomic(a.out, SerializeDpg(graph));
    out << "DPG: " << graph.size() << " nodes, " << graph.edges.size()
        << " edges from " << model.trees.size() << " trees x "
        << data.num_rows << " samples\n";
    return std::vector<std::string>{a.out};
  });
}

void RunMetrics(const MetricsArgs& a, std::ostream& out) {
  Json config = {{"metric", a.metric}, {"top", a.top}};
  RunWithManifest("metrics", {a.dpg}, config, [&] {
    const Dpg graph = LoadDpg(a.dpg);
    CentralityReport report;
    if (a.metric == "bc") {
      report = BetweennessCentrality(graph);
    } else if (a.metric == "bc-hops") {
      report = BetweennessCentrality(graph, BcMode::kHops);
    } else if (a.metric == "lrc") {
      report = LocalReachingCentrality(graph, LrcMode::kWeighted);
    } else {
      report = LocalReachingCentrality(graph, LrcMode::kUnweighted);
    }
    const std::string csv = CentralityCsv(graph, report, a.top);
    WriteFileAtomic(a.out, csv);
    out << csv;
    return std::vector<std::string>{a.out};
  });
}

Json CommunitiesToJson(const Dpg& graph, const CommunityReport& report) {
  return {{"seed", report.seed},
          {"sweeps", report.sweeps},
          {"converged", report.converged},
          {"communities", report.communities},
          {"table", CommunityTable(graph, report)}};
}

void RunCommunities(const CommunitiesArgs& a, std::ostream& out) {
  const std::uint64_t seed = EffectiveSeed(a.seed);
  Json config = {
      {"seed", seed}, {"max_iters", a.max_iters}, {"view", a.view}};
  RunWithManifest("communities", {a.dpg}, config, [&] {
    const Dpg graph = LoadDpg(a.dpg);
    const CommunityReport report = DetectCommunities(
        graph, seed, a.max_iters,
        a.view == "undirected" ? LpaView::kUndirected : LpaView::kOutgoing);
    WriteFileAtomic(a.out, CommunitiesToJson(graph, report).dump(2) + "\n");
    for (const auto& s : CommunityClasses(report, graph)) {
      out << "Community " << s.index << ": " << s.num_predicates
          << " predicates, " << s.num_features << " features, class "
          << s.ClassLabel(graph.provenance.classes) << "\n";
    }
    return std::vector<std::string>{a.out};
  });
}

void RunConstraints(const ConstraintsArgs& a, std::ostream& out) {
  std::vector<std::string> inputs = {a.dpg};
  if (!a.evaluate.empty()) inputs.push_back(a.evaluate);
  RunWithManifest("constraints", inputs, Json::object(), [&] {
    const Dpg graph = LoadDpg(a.dpg);
    const auto all = ExtractAllConstraints(graph);
    Json doc = ConstraintsToJson(all, graph.provenance);
    if (!a.evaluate.empty()) {
      Dataset data = LoadCsv(a.evaluate);
      if (data.labels.empty() && data.num_rows > 0) {
        throw DataError("--evaluate needs a labeled CSV");
      }
      AlignLabels(data, graph.provenance.classes);
      std::vector<std::size_t> rows(data.num_rows);
      std::iota(rows.begin(), rows.end(), 0);
      for (std::size_t i = 0; i < all.size(); ++i) {
        doc["classes"][i]["evaluation"] =
            EvaluateConstraints(data, rows, all[i]).ToJson();
      }
    }
    WriteFileAtomic(a.out, doc.dump(2) + "\n");
    for (const auto& cc : all) {
      out << "Class " << graph.provenance.classes.labels[cc.class_index]
          << "\n";
      for (const auto& iv : cc.intervals) {
        out << "  "
            << FormatInterval(iv, graph.provenance.features,
                              graph.provenance.decimals)
            << "\n";
      }
    }
    return std::vector<std::string>{a.out};
  });
}

CommunityReport LoadCommunities(const std::string& path) {
  CommunityReport report;
  try {
    const Json doc = Json::parse(ReadFile(path));
    report.communities =
        doc.at("communities").get<std::vector<std::vector<NodeId>>>();
    report.seed = doc.value("seed", std::uint64_t{0});
  } catch (const Json::exception& e) {
    throw ParseError("communities JSON: " + std::string(e.what()));
  }
  return report;
}

void RunDot(const DotArgs& a) {
  std::vector<std::string> inputs = {a.dpg};
  if (!a.communities.empty()) inputs.push_back(a.communities);
  Json config = {{"highlight_classes", !a.no_highlight},
                 {"color_by_community", !a.communities.empty()}};
  RunWithManifest("dot", inputs, config, [&] {
    const Dpg graph = LoadDpg(a.dpg);
    DotOptions options;
    options.highlight_classes = !a.no_highlight;
    CommunityReport communities;
    if (!a.communities.empty()) {
      communities = LoadCommunities(a.communities);
      options.communities = &communities;
    }
    WriteFileAtomic(a.out, ExportDot(graph, options).text);
    return std::vector<std::string>{a.out};
  });
}

void RunReport(const ReportArgs& a, std::ostream& out) {
  ReportOptions options;
  options.betweenness = options.reaching = options.communities =
      options.constraints = false;
  for (const auto& m : a.metrics) {
    if (m == "bc") options.betweenness = true;
    else if (m == "lrc") options.reaching = true;
    else if (m == "communities") options.communities = true;
    else if (m == "constraints") options.constraints = true;
    else if (m != "none") {
      throw CLI::ValidationError("--metrics", "unknown metric '" + m + "'");
    }
  }
  options.top_k = a.top;
  options.seed = EffectiveSeed(a.seed);
  Json config = {{"metrics", a.metrics}, {"top", a.top}, {"seed", options.seed}};
  RunWithManifest("report", {a.dpg}, config, [&] {
    const Dpg graph = LoadDpg(a.dpg);
    const Json bundle = BuildReport(graph, options);
    WriteFileAtomic(a.out, bundle.dump(2) + "\n");
    out << "report written to " << a.out << "\n";
    return std::vector<std::string>{a.out};
  });
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Decision predicate graphs for tree ensembles", "dpg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  TrainArgs train;
  auto* train_cmd = app.add_subcommand(
      "train", "Fit a random forest on a CSV and export it as portable JSON");
  train_cmd->add_option("--data", train.data, "Labeled CSV")->required();
  train_cmd->add_option("--trees", train.trees, "Number of trees")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed, "Random seed (DPG_SEED overrides)");
  train_cmd->add_option("--test-fraction", train.test_fraction,
                        "Held-out fraction")
      ->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--out", train.out, "Model JSON path")->required();
  train_cmd->add_option("--max-depth", train.max_depth, "Depth limit");
  train_cmd->add_option("--max-features", train.max_features,
                        "sqrt, all or a count");
  train_cmd->add_flag("--no-bootstrap", train.no_bootstrap,
                      "Fit every tree on all training rows");
  train_cmd->add_option("--threads", train.threads, "Worker threads (0 = all)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand(
      "build", "Build a decision predicate graph from a model and data");
  build_cmd->add_option("--model", build.model, "Ensemble JSON")->required();
  build_cmd->add_option("--data", build.data, "Training CSV")->required();
  build_cmd->add_option("--precision", build.precision,
                        "Threshold decimals for predicate merging")
      ->check(CLI::NonNegativeNumber);
  build_cmd->add_option("--out", build.out, "DPG JSON path")->required();
  build_cmd->add_option("--threads", build.threads, "Worker threads (0 = all)");

  MetricsArgs metrics;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Rank predicates by a centrality metric");
  metrics_cmd->add_option("--dpg", metrics.dpg, "DPG JSON")->required();
  metrics_cmd->add_option("--metric", metrics.metric, "bc, bc-hops, lrc or lrc-unweighted")
      ->check(CLI::IsMember({"bc", "bc-hops", "lrc", "lrc-unweighted"}));
  metrics_cmd->add_option("--top", metrics.top, "Rows to keep");
  metrics_cmd->add_option("--out", metrics.out, "CSV path")->required();

  CommunitiesArgs communities;
  auto* communities_cmd = app.add_subcommand(
      "communities", "Asynchronous label propagation communities");
  communities_cmd->add_option("--dpg", communities.dpg, "DPG JSON")->required();
  communities_cmd->add_option("--seed", communities.seed,
                              "Random seed (DPG_SEED overrides)");
  communities_cmd->add_option("--max-iters", communities.max_iters,
                              "Sweep limit");
  communities_cmd->add_option("--view", communities.view,
                              "Neighbourhood: outgoing or undirected")
      ->check(CLI::IsMember({"outgoing", "undirected"}));
  communities_cmd->add_option("--out", communities.out, "JSON path")->required();

  ConstraintsArgs constraints;
  auto* constraints_cmd =
      app.add_subcommand("constraints", "Per-class feature intervals");
  constraints_cmd->add_option("--dpg", constraints.dpg, "DPG JSON")->required();
  constraints_cmd->add_option("--out", constraints.out, "JSON path")->required();
  constraints_cmd->add_option("--evaluate", constraints.evaluate,
                              "Labeled CSV to score the constraints on");

  DotArgs dot;
  auto* dot_cmd = app.add_subcommand("dot", "Export the DPG as Graphviz DOT");
  dot_cmd->add_option("--dpg", dot.dpg, "DPG JSON")->required();
  dot_cmd->add_option("--out", dot.out, "DOT path")->required();
  dot_cmd->add_option("--communities", dot.communities,
                      "Communities JSON to colour nodes by");
  dot_cmd->add_flag("--no-highlight", dot.no_highlight,
                    "Do not fill class nodes");

  ReportArgs report;
  auto* report_cmd =
      app.add_subcommand("report", "Constraints, BC, LRC and communities in one JSON");
  report_cmd->add_option("--dpg", report.dpg, "DPG JSON")->required();
  report_cmd->add_option("--out", report.out, "JSON path")->required();
  report_cmd->add_option("--top", report.top, "Rows per centrality table");
  report_cmd->add_option("--seed", report.seed, "Community seed (DPG_SEED overrides)");
  report_cmd->add_option("--metrics", report.metrics,
                         "Subset of bc,lrc,communities,constraints, or none")
      ->delimiter(',');

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("dpg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) RunTrain(train, out);
    else if (*build_cmd) RunBuild(build, out, err);
    else if (*metrics_cmd) RunMetrics(metrics, out);
    else if (*communities_cmd) RunCommunities(communities, out);
    else if (*constraints_cmd) RunConstraints(constraints, out);
    else if (*dot_cmd) RunDot(dot);
    else if (*report_cmd) RunReport(report, out);
  } catch (const CLI::ValidationError& e) {
    err << "dpg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "dpg: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "dpg: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace dpg::cli
