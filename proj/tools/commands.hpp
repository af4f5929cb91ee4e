#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <ostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cybergraph/cybergraph.hpp"

namespace cybergraph::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kAlgorithmError = 3,
  kInvariantError = 4,
};

/// Output files of one command: path -> bytes.
using Artifacts = std::map<std::string, std::string>;

/// Seed taken from CYBERGRAPH_SEED when no --seed is given; 0 otherwise.
std::uint64_t default_seed();

std::string sha256_hex(const std::string& bytes);

struct LawOptions {
  std::string family = "lognormal";
  double alpha = 1.371;
  std::optional<double> beta = 1.986;

  DistributionSpec spec() const;
};

struct FitCommand {
  std::string counts_file;
  std::string family = "all";
};

struct GenCommand {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 10;
  LawOptions law;
  std::uint64_t seed = 0;
  std::string model = "pw";
  bool repair = false;
  std::size_t max_attempts = 100'000;
  std::size_t max_restarts = 20;
  std::string out = "graph.txt";
  /// Empty means "<out>.manifest.json".
  std::string manifest;
};

struct MetricsCommand {
  std::string graph_file;
  std::string cc_mode = "local";
  bool simplify = false;
};

struct CompareCommand {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 10;
  LawOptions law;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::vector<std::string> models{"cm", "hh", "cl", "hm", "pw"};
  bool repair = false;
  std::size_t max_attempts = 100'000;
  std::size_t max_restarts = 20;
  std::string json_out;
  std::string text_out;
  std::string manifest;
};

struct RelabelCommand {
  std::string cyber_edges;
  std::string power_positions;
  std::string cyber_positions;
  std::string out = "relabeled.txt";
  std::string mapping_out = "relabel.json";
};

struct ExportCommand {
  std::string graph_file;
  std::string format = "dot";
  std::string out;
};

/// Model generators shared by gen and compare. `seed` is the run seed; each
/// model derives its own stream from it so one seed gives the same graph in
/// both commands.
io::AnyGraph build_model(const std::string& model, const DegreeSequence& sequence, std::uint64_t seed,
                         std::size_t max_restarts);

const std::vector<std::string>& known_models();

nlohmann::json run_fit(const FitCommand& cmd);
Artifacts run_gen(const GenCommand& cmd);
nlohmann::json run_metrics(const MetricsCommand& cmd);
Artifacts run_compare(const CompareCommand& cmd, std::string* table = nullptr);
Artifacts run_relabel(const RelabelCommand& cmd);
std::string run_export(const ExportCommand& cmd);

nlohmann::json gen_manifest(const GenCommand& cmd, const Artifacts& outputs);
nlohmann::json compare_manifest(const CompareCommand& cmd, const Artifacts& outputs);

/// Re-executes the command recorded in a manifest in memory and compares
/// each output digest. Returns the paths whose bytes differ.
std::vector<std::string> replay(const nlohmann::json& manifest);

void write_artifacts(const Artifacts& artifacts);

/// Runs `body`, printing errors to `err` and mapping exception types to
/// exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    body();
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const AlgorithmError& e) {
    err << "error: " << e.what() << '\n';
    return kAlgorithmError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantError;
  }
}

}  // namespace cybergraph::cli
