#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cybergraph::cli {

using nlohmann::json;

std::uint64_t default_seed() {
  const char* env = std::getenv("CYBERGRAPH_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(env, &used);
    if (used != std::string(env).size()) throw InputError("");
    return value;
  } catch (const std::exception&) {
    throw InputError(std::string("CYBERGRAPH_SEED is not an unsigned integer: '") + env + "'");
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InvariantError("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

DistributionSpec LawOptions::spec() const {
  DistributionSpec s;
  s.family = parse_family(family);
  s.alpha = alpha;
  s.beta = s.family == Family::zipf ? std::nullopt : beta;
  s.validate();
  return s;
}

namespace {

json law_to_json(const LawOptions& law) {
  return json{{"family", law.family}, {"alpha", law.alpha}, {"beta", law.beta ? json(*law.beta) : json(nullptr)}};
}

LawOptions law_from_json(const json& j) {
  LawOptions law;
  law.family = j.at("family").get<std::string>();
  law.alpha = j.at("alpha").get<double>();
  law.beta = j.at("beta").is_null() ? std::nullopt : std::optional<double>(j.at("beta").get<double>());
  return law;
}

std::uint64_t model_tag(const std::string& model) {
  const auto& models = known_models();
  const auto it = std::find(models.begin(), models.end(), model);
  if (it == models.end()) throw InputError("unknown model '" + model + "' (expected pw, cm, hh, cl or hm)");
  return static_cast<std::uint64_t>(it - models.begin()) + 1;
}

SequenceRequest sequence_request(std::size_t n, std::size_t m, std::size_t d_max, const LawOptions& law,
                                 std::uint64_t seed, std::size_t max_attempts, bool repair) {
  SequenceRequest req;
  req.n = n;
  req.m = m;
  req.d_max = d_max;
  req.spec = law.spec();
  req.seed = seed;
  req.max_attempts = max_attempts;
  req.repair = repair;
  return req;
}

std::string edge_list_text(const io::AnyGraph& g) {
  std::ostringstream out;
  io::write_edge_list(out, g);
  return out.str();
}

MetricsReport report_of(const io::AnyGraph& g, const ReportOptions& options = {}) {
  return std::visit([&](const auto& graph) { return full_report(graph, options); }, g);
}

/// Linear-interpolation quantile of sorted values.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string format_value(const json& v, int precision = 3) {
  if (v.is_null()) return "--";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
  const double x = v.get<double>();
  std::ostringstream out;
  if (x != 0.0 && std::abs(x) < 1e-2) {
    out << std::scientific << std::setprecision(2) << x;
  } else {
    out << std::fixed << std::setprecision(precision) << x;
  }
  return out.str();
}

const std::vector<std::string> kMetricKeys{"rho", "diameter", "avg_shortest_path", "clustering", "assortativity",
                                           "spectral_gap"};

}  // namespace

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> models{"pw", "cm", "hh", "cl", "hm"};
  return models;
}

io::AnyGraph build_model(const std::string& model, const DegreeSequence& sequence, std::uint64_t seed,
                         std::size_t max_restarts) {
  const std::uint64_t model_seed = Rng::splitmix64(seed ^ Rng::splitmix64(model_tag(model)));
  const std::span<const std::size_t> degrees(sequence.degrees);
  Rng rng = Rng::stream(model_seed, 0);
  if (model == "pw") {
    GeneratorOptions options;
    options.max_restarts = max_restarts;
    return generate(degrees, model_seed, options);
  }
  if (model == "cm") return configuration_model(degrees, rng);
  if (model == "hh") return havel_hakimi_graph(degrees);
  if (model == "cl") return chung_lu_graph(degrees, rng);
  return horvat_modes_graph(degrees, rng);
}

json run_fit(const FitCommand& cmd) {
  std::ifstream in(cmd.counts_file);
  if (!in) throw InputError("cannot open '" + cmd.counts_file + "'");
  const DegreeCountVector reference = io::parse_degree_counts(in);
  std::vector<Family> families;
  if (cmd.family == "all") {
    families.assign(kAllFamilies.begin(), kAllFamilies.end());
  } else {
    families.push_back(parse_family(cmd.family));
  }
  json fits = json::array();
  for (Family f : families) fits.push_back(io::fit_to_json(fit(reference, f)));
  return json{{"reference",
               {{"nodes", reference.node_count()},
                {"max_degree", reference.max_degree()},
                {"counts", reference.counts()}}},
              {"mse_convention", "sum of squared residuals of normalized frequencies / max_degree"},
              {"fits", fits}};
}

Artifacts run_gen(const GenCommand& cmd) {
  const auto req = sequence_request(cmd.n, cmd.m, cmd.d_max, cmd.law, cmd.seed, cmd.max_attempts, cmd.repair);
  model_tag(cmd.model);
  const DegreeSequence sequence = sample_sequence(req);
  const io::AnyGraph graph = build_model(cmd.model, sequence, cmd.seed, cmd.max_restarts);
  return {{cmd.out, edge_list_text(graph)}};
}

json run_metrics(const MetricsCommand& cmd) {
  ReportOptions options;
  if (cmd.cc_mode == "local") {
    options.clustering = ClusteringMode::average_local;
  } else if (cmd.cc_mode == "transitivity") {
    options.clustering = ClusteringMode::transitivity;
  } else {
    throw InputError("unknown --cc-mode '" + cmd.cc_mode + "' (expected local or transitivity)");
  }
  io::AnyGraph g = io::load_graph(cmd.graph_file);
  if (cmd.simplify) {
    if (const auto* multi = std::get_if<WorkGraph>(&g)) g = simple_support(*multi);
  }
  return io::report_to_json(report_of(g, options));
}

Artifacts run_compare(const CompareCommand& cmd, std::string* table) {
  if (cmd.seeds == 0) throw InputError("--seeds must be at least 1");
  for (const auto& model : cmd.models) model_tag(model);

  json runs = json::array();
  std::map<std::string, std::map<std::string, std::vector<double>>> samples;
  std::map<std::string, std::size_t> failures;
  for (std::size_t k = 0; k < cmd.seeds; ++k) {
    const std::uint64_t seed = cmd.seed + k;
    const auto req = sequence_request(cmd.n, cmd.m, cmd.d_max, cmd.law, seed, cmd.max_attempts, cmd.repair);
    const DegreeSequence sequence = sample_sequence(req);
    for (const auto& model : cmd.models) {
      json row{{"seed", seed}, {"model", model}};
      try {
        const json report = io::report_to_json(report_of(build_model(model, sequence, seed, cmd.max_restarts)));
        row["report"] = report;
        for (const auto& key : kMetricKeys) {
          if (!report[key].is_null()) samples[model][key].push_back(report[key].get<double>());
        }
        samples[model]["graphical"].push_back(report["graphical"].get<bool>() ? 1.0 : 0.0);
        samples[model]["connected"].push_back(report["connected"].get<bool>() ? 1.0 : 0.0);
      } catch (const Error& e) {
        row["error"] = e.what();
        ++failures[model];
      }
      runs.push_back(std::move(row));
    }
  }

  json summary = json::array();
  for (const auto& model : cmd.models) {
    json entry{{"model", model}, {"failures", failures[model]}};
    for (const auto& key : kMetricKeys) {
      auto values = samples[model][key];
      if (values.empty()) {
        entry[key] = {{"defined", 0}, {"median", nullptr}, {"q1", nullptr}, {"q3", nullptr}};
        continue;
      }
      std::sort(values.begin(), values.end());
      entry[key] = {{"defined", values.size()},
                    {"median", quantile(values, 0.5)},
                    {"q1", quantile(values, 0.25)},
                    {"q3", quantile(values, 0.75)}};
    }
    for (const char* flag : {"graphical", "connected"}) {
      const auto& v = samples[model][flag];
      entry[std::string(flag) + "_fraction"] =
          v.empty() ? json(nullptr) : json(std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()));
    }
    summary.push_back(std::move(entry));
  }

  const json document{{"parameters",
                       {{"n", cmd.n},
                        {"m", cmd.m},
                        {"dmax", cmd.d_max},
                        {"law", law_to_json(cmd.law)},
                        {"seed", cmd.seed},
                        {"seeds", cmd.seeds},
                        {"models", cmd.models},
                        {"repair", cmd.repair}}},
                      {"runs", runs},
                      {"summary", summary}};

  std::ostringstream text;
  text << "n=" << cmd.n << " m=" << cmd.m << " dmax=" << cmd.d_max << " seeds=" << cmd.seed << ".."
       << cmd.seed + cmd.seeds - 1 << '\n';
  const std::vector<std::string> headers{"model", "g", "c", "rho", "diam", "sp", "cc", "a", "lambda"};
  auto put_row = [&](const std::vector<std::string>& cells) {
    text << std::left << std::setw(6) << cells[0];
    for (std::size_t i = 1; i < cells.size(); ++i) text << std::right << std::setw(i < 3 ? 5 : 11) << cells[i];
    text << '\n';
  };
  if (cmd.seeds == 1) {
    put_row(headers);
    for (const auto& row : runs) {
      if (row.contains("error")) {
        text << std::left << std::setw(6) << row["model"].get<std::string>() << "error: " << row["error"].get<std::string>()
             << '\n';
        continue;
      }
      const json& r = row["report"];
      put_row({row["model"].get<std::string>(), format_value(r["graphical"]), format_value(r["connected"]),
               format_value(r["rho"]), format_value(r["diameter"]), format_value(r["avg_shortest_path"], 2),
               format_value(r["clustering"]), format_value(r["assortativity"]), format_value(r["spectral_gap"])});
    }
  } else {
    text << "medians over seeds [IQR in JSON]; g/c = fraction graphical/connected\n";
    put_row(headers);
    for (const auto& entry : summary) {
      std::vector<std::string> cells{entry["model"].get<std::string>(), format_value(entry["graphical_fraction"], 2),
                                     format_value(entry["connected_fraction"], 2)};
      for (const auto& key : kMetricKeys) cells.push_back(format_value(entry[key]["median"], key == "avg_shortest_path" ? 2 : 3));
      put_row(cells);
      text << std::left << std::setw(6) << "  IQR" << std::right << std::setw(10) << "";
      for (const auto& key : kMetricKeys) {
        const json& s = entry[key];
        const std::string iqr = s["q1"].is_null() ? "--" : format_value(s["q3"].get<double>() - s["q1"].get<double>());
        text << std::setw(11) << iqr;
      }
      text << '\n';
    }
  }
  if (table != nullptr) *table = text.str();

  Artifacts artifacts;
  if (!cmd.json_out.empty()) artifacts[cmd.json_out] = document.dump(2) + "\n";
  if (!cmd.text_out.empty()) artifacts[cmd.text_out] = text.str();
  return artifacts;
}

Artifacts run_relabel(const RelabelCommand& cmd) {
  const io::AnyGraph loaded = io::load_graph(cmd.cyber_edges);
  const auto* cyber = std::get_if<SimpleGraph>(&loaded);
  if (cyber == nullptr) throw InputError("cyber graph must be simple to relabel");
  std::ifstream power_in(cmd.power_positions);
  if (!power_in) throw InputError("cannot open '" + cmd.power_positions + "'");
  std::ifstream cyber_in(cmd.cyber_positions);
  if (!cyber_in) throw InputError("cannot open '" + cmd.cyber_positions + "'");
  const PositionMap power = io::parse_positions(power_in);
  const PositionMap cyber_pos = io::parse_positions(cyber_in);
  if (cyber_pos.size() != cyber->node_count()) {
    throw InputError("cyber positions cover " + std::to_string(cyber_pos.size()) + " labels but the graph has " +
                     std::to_string(cyber->node_count()) + " nodes");
  }
  const CostMatrix cost = build_cost(power, cyber_pos);
  const Relabeling best = solve_assignment(cost);
  const SimpleGraph relabeled = relabel(*cyber, best);
  const double before = assignment_cost(cost, Relabeling::identity(cost.rows()));
  const double after = assignment_cost(cost, best);

  json mapping = json::object();
  for (std::size_t v = 0; v < best.perm.size(); ++v) mapping[std::to_string(v)] = best.perm[v];
  const json doc{{"permutation", best.perm},
                 {"mapping", mapping},
                 {"cost_before", before},
                 {"cost_after", after},
                 {"cost_delta", after - before}};
  std::ostringstream edges;
  io::write_edge_list(edges, relabeled);
  return {{cmd.out, edges.str()}, {cmd.mapping_out, doc.dump(2) + "\n"}};
}

std::string run_export(const ExportCommand& cmd) {
  const io::AnyGraph g = io::load_graph(cmd.graph_file);
  if (cmd.format == "dot") return std::visit([](const auto& graph) { return io::to_dot(graph); }, g);
  if (cmd.format == "graphml") return std::visit([](const auto& graph) { return io::to_graphml(graph); }, g);
  if (cmd.format == "json") return io::graph_to_json(g).dump(2) + "\n";
  if (cmd.format == "edgelist") return edge_list_text(g);
  throw InputError("unknown format '" + cmd.format + "' (expected dot, graphml, json or edgelist)");
}

namespace {

json digests(const Artifacts& outputs) {
  json j = json::object();
  for (const auto& [path, bytes] : outputs) j[path] = sha256_hex(bytes);
  return j;
}

json base_manifest(const std::string& command) {
  return json{{"tool", "cybergraph"}, {"version", kVersion}, {"command", command}};
}

}  // namespace

json gen_manifest(const GenCommand& cmd, const Artifacts& outputs) {
  json m = base_manifest("gen");
  m["seed"] = cmd.seed;
  m["sequence_mode"] = cmd.repair ? "repair" : "rejection";
  m["parameters"] = {{"n", cmd.n},
                     {"m", cmd.m},
                     {"dmax", cmd.d_max},
                     {"law", law_to_json(cmd.law)},
                     {"model", cmd.model},
                     {"repair", cmd.repair},
                     {"max_attempts", cmd.max_attempts},
                     {"max_restarts", cmd.max_restarts},
                     {"out", cmd.out}};
  m["inputs"] = json::object();
  m["outputs"] = digests(outputs);
  return m;
}

json compare_manifest(const CompareCommand& cmd, const Artifacts& outputs) {
  json m = base_manifest("compare");
  m["seed"] = cmd.seed;
  m["sequence_mode"] = cmd.repair ? "repair" : "rejection";
  m["parameters"] = {{"n", cmd.n},
                     {"m", cmd.m},
                     {"dmax", cmd.d_max},
                     {"law", law_to_json(cmd.law)},
                     {"seeds", cmd.seeds},
                     {"models", cmd.models},
                     {"repair", cmd.repair},
                     {"max_attempts", cmd.max_attempts},
                     {"max_restarts", cmd.max_restarts},
                     {"json_out", cmd.json_out},
                     {"text_out", cmd.text_out}};
  m["inputs"] = json::object();
  m["outputs"] = digests(outputs);
  return m;
}

std::vector<std::string> replay(const json& manifest) {
  const std::string command = manifest.at("command").get<std::string>();
  const json& p = manifest.at("parameters");
  Artifacts produced;
  if (command == "gen") {
    GenCommand cmd;
    cmd.n = p.at("n").get<std::size_t>();
    cmd.m = p.at("m").get<std::size_t>();
    cmd.d_max = p.at("dmax").get<std::size_t>();
    cmd.law = law_from_json(p.at("law"));
    cmd.model = p.at("model").get<std::string>();
    cmd.repair = p.at("repair").get<bool>();
    cmd.max_attempts = p.at("max_attempts").get<std::size_t>();
    cmd.max_restarts = p.at("max_restarts").get<std::size_t>();
    cmd.out = p.at("out").get<std::string>();
    cmd.seed = manifest.at("seed").get<std::uint64_t>();
    produced = run_gen(cmd);
  } else if (command == "compare") {
    CompareCommand cmd;
    cmd.n = p.at("n").get<std::size_t>();
    cmd.m = p.at("m").get<std::size_t>();
    cmd.d_max = p.at("dmax").get<std::size_t>();
    cmd.law = law_from_json(p.at("law"));
    cmd.seeds = p.at("seeds").get<std::size_t>();
    cmd.models = p.at("models").get<std::vector<std::string>>();
    cmd.repair = p.at("repair").get<bool>();
    cmd.max_attempts = p.at("max_attempts").get<std::size_t>();
    cmd.max_restarts = p.at("max_restarts").get<std::size_t>();
    cmd.json_out = p.at("json_out").get<std::string>();
    cmd.text_out = p.at("text_out").get<std::string>();
    cmd.seed = manifest.at("seed").get<std::uint64_t>();
    produced = run_compare(cmd);
  } else {
    throw InputError("manifest command '" + command + "' cannot be replayed");
  }
  std::vector<std::string> mismatched;
  for (const auto& [path, digest] : manifest.at("outputs").items()) {
    const auto it = produced.find(path);
    if (it == produced.end() || sha256_hex(it->second) != digest.get<std::string>()) mismatched.push_back(path);
  }
  return mismatched;
}

void write_artifacts(const Artifacts& artifacts) {
  for (const auto& [path, bytes] : artifacts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << bytes;
  }
}

}  // namespace cybergraph::cli
