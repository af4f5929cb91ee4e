#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace {

using namespace cybergraph;
using namespace cybergraph::cli;

void add_law_options(CLI::App* sub, LawOptions& law, std::optional<double>& beta_flag) {
  sub->add_option("--family", law.family, "Degree law: lognormal, powerlaw or zipf")
      ->check(CLI::IsMember({"lognormal", "powerlaw", "zipf"}));
  sub->add_option("-a,--alpha", law.alpha, "Law parameter alpha");
  sub->add_option("-b,--beta", beta_flag, "Law parameter beta (ignored for zipf)");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  write_artifacts({{path, text}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic smart-grid communication topologies with prescribed degrees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string out_path;

  FitCommand fit_cmd;
  auto* fit_sub = app.add_subcommand("fit", "Fit degree laws to a degree,count histogram");
  fit_sub->add_option("counts", fit_cmd.counts_file, "CSV of degree,count rows")->required();
  fit_sub->add_option("--family", fit_cmd.family, "lognormal, powerlaw, zipf or all")
      ->check(CLI::IsMember({"lognormal", "powerlaw", "zipf", "all"}));
  fit_sub->add_option("-o,--out", out_path, "Write JSON here instead of stdout");

  GenCommand gen_cmd;
  std::optional<double> gen_beta;
  std::optional<std::uint64_t> gen_seed;
  auto* gen_sub = app.add_subcommand("gen", "Sample a degree sequence and build one graph");
  gen_sub->add_option("-n,--nodes", gen_cmd.n, "Node count")->required();
  gen_sub->add_option("-m,--edges", gen_cmd.m, "Edge count")->required();
  gen_sub->add_option("--dmax", gen_cmd.d_max, "Maximum degree");
  add_law_options(gen_sub, gen_cmd.law, gen_beta);
  gen_sub->add_option("--seed", gen_seed, "RNG seed (default: $CYBERGRAPH_SEED or 0)");
  gen_sub->add_option("--model", gen_cmd.model, "pw (default), cm, hh, cl or hm")
      ->check(CLI::IsMember(known_models()));
  gen_sub->add_flag("--repair", gen_cmd.repair, "Nudge sampled degrees to the target sum instead of rejecting");
  gen_sub->add_option("--max-attempts", gen_cmd.max_attempts, "Degree sequence draws before giving up");
  gen_sub->add_option("--max-restarts", gen_cmd.max_restarts, "Generator restarts before giving up");
  gen_sub->add_option("-o,--out", gen_cmd.out, "Edge list path");
  gen_sub->add_option("--manifest", gen_cmd.manifest, "Manifest path (default <out>.manifest.json)");

  MetricsCommand metrics_cmd;
  auto* metrics_sub = app.add_subcommand("metrics", "Global characteristics of a graph file");
  metrics_sub->add_option("graph", metrics_cmd.graph_file, "Edge list or JSON graph")->required();
  metrics_sub->add_option("--cc-mode", metrics_cmd.cc_mode, "local (default) or transitivity")
      ->check(CLI::IsMember({"local", "transitivity"}));
  metrics_sub->add_flag("--simplify", metrics_cmd.simplify, "Measure a multigraph on its simple support");
  metrics_sub->add_option("-o,--out", out_path, "Write JSON here instead of stdout");

  CompareCommand compare_cmd;
  std::optional<double> compare_beta;
  std::optional<std::uint64_t> compare_seed;
  std::string models_csv;
  auto* compare_sub = app.add_subcommand("compare", "Run every model on shared degree sequences");
  compare_sub->add_option("-n,--nodes", compare_cmd.n, "Node count")->required();
  compare_sub->add_option("-m,--edges", compare_cmd.m, "Edge count")->required();
  compare_sub->add_option("--dmax", compare_cmd.d_max, "Maximum degree");
  add_law_options(compare_sub, compare_cmd.law, compare_beta);
  compare_sub->add_option("--seed", compare_seed, "First seed (default: $CYBERGRAPH_SEED or 0)");
  compare_sub->add_option("--seeds", compare_cmd.seeds, "Number of consecutive seeds");
  compare_sub->add_option("--models", models_csv, "Comma-separated subset of cm,hh,cl,hm,pw");
  compare_sub->add_flag("--repair", compare_cmd.repair, "Nudge sampled degrees to the target sum");
  compare_sub->add_option("--max-attempts", compare_cmd.max_attempts, "Degree sequence draws before giving up");
  compare_sub->add_option("--max-restarts", compare_cmd.max_restarts, "Generator restarts before giving up");
  compare_sub->add_option("--json", compare_cmd.json_out, "Write the JSON report here");
  compare_sub->add_option("--text", compare_cmd.text_out, "Also write the table here");
  compare_sub->add_option("--manifest", compare_cmd.manifest, "Write a replay manifest here");

  RelabelCommand relabel_cmd;
  auto* relabel_sub = app.add_subcommand("relabel", "Relabel a cyber graph to minimize cross distances");
  relabel_sub->add_option("cyber_edges", relabel_cmd.cyber_edges, "Cyber graph edge list")->required();
  relabel_sub->add_option("power_positions", relabel_cmd.power_positions, "label,x,y CSV")->required();
  relabel_sub->add_option("cyber_positions", relabel_cmd.cyber_positions, "label,x,y CSV")->required();
  relabel_sub->add_option("-o,--out", relabel_cmd.out, "Relabeled edge list path");
  relabel_sub->add_option("--mapping", relabel_cmd.mapping_out, "Permutation JSON path");

  ExportCommand export_cmd;
  auto* export_sub = app.add_subcommand("export", "Convert a graph file");
  export_sub->add_option("graph", export_cmd.graph_file, "Edge list or JSON graph")->required();
  export_sub->add_option("--format", export_cmd.format, "dot, graphml, json or edgelist")
      ->check(CLI::IsMember({"dot", "graphml", "json", "edgelist"}));
  export_sub->add_option("-o,--out", export_cmd.out, "Output path (default stdout)");

  std::string manifest_path;
  auto* replay_sub = app.add_subcommand("replay", "Re-run a manifest and verify its output digests");
  replay_sub->add_option("manifest", manifest_path, "Manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  auto& err = std::cerr;
  if (*fit_sub) {
    return guarded(err, [&] { emit(run_fit(fit_cmd).dump(2) + "\n", out_path); });
  }
  if (*gen_sub) {
    return guarded(err, [&] {
      gen_cmd.law.beta = gen_beta ? gen_beta : gen_cmd.law.beta;
      gen_cmd.seed = gen_seed ? *gen_seed : default_seed();
      const Artifacts outputs = run_gen(gen_cmd);
      write_artifacts(outputs);
      const std::string manifest = gen_cmd.manifest.empty() ? gen_cmd.out + ".manifest.json" : gen_cmd.manifest;
      write_artifacts({{manifest, gen_manifest(gen_cmd, outputs).dump(2) + "\n"}});
    });
  }
  if (*metrics_sub) {
    return guarded(err, [&] { emit(run_metrics(metrics_cmd).dump(2) + "\n", out_path); });
  }
  if (*compare_sub) {
    return guarded(err, [&] {
      compare_cmd.law.beta = compare_beta ? compare_beta : compare_cmd.law.beta;
      compare_cmd.seed = compare_seed ? *compare_seed : default_seed();
      if (!models_csv.empty()) {
        compare_cmd.models.clear();
        std::stringstream ss(models_csv);
        std::string model;
        while (std::getline(ss, model, ',')) compare_cmd.models.push_back(model);
      }
      std::string table;
      const Artifacts outputs = run_compare(compare_cmd, &table);
      std::cout << table;
      write_artifacts(outputs);
      if (!compare_cmd.manifest.empty()) {
        write_artifacts({{compare_cmd.manifest, compare_manifest(compare_cmd, outputs).dump(2) + "\n"}});
      }
    });
  }
  if (*relabel_sub) {
    return guarded(err, [&] { write_artifacts(run_relabel(relabel_cmd)); });
  }
  if (*export_sub) {
    return guarded(err, [&] { emit(run_export(export_cmd), export_cmd.out); });
  }
  if (*replay_sub) {
    int code = kOk;
    const int status = guarded(err, [&] {
      std::ifstream in(manifest_path);
      if (!in) throw InputError("cannot open '" + manifest_path + "'");
      const auto manifest = nlohmann::json::parse(in);
      const auto mismatched = replay(manifest);
      for (const auto& path : mismatched) err << "digest mismatch: " << path << '\n';
      if (!mismatched.empty()) code = kInvariantError;
      std::cout << (mismatched.empty() ? "replay identical\n" : "replay differs\n");
    });
    return status != kOk ? status : code;
  }
  return kOk;
}
