#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "cybergraph/cybergraph.hpp"
#include "oracles.hpp"

using namespace cybergraph;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

bool realizes(const SimpleGraph& g, const std::vector<std::size_t>& degrees) {
  return g.degrees() == degrees &&
         oracle::connected_by_union_find(g.node_count(), {g.edges().begin(), g.edges().end()});
}

DegreeSequence pw_sequence(std::size_t n, std::size_t m, std::uint64_t seed) {
  SequenceRequest req;
  req.n = n;
  req.m = m;
  req.seed = seed;
  return sample_sequence(req);
}

void fit_criterion(Outcome& o) {
  const auto start = Clock::now();
  std::ifstream in(std::string(CYBERGRAPH_DATA_DIR) + "/reference_counts.csv");
  const auto counts = io::parse_degree_counts(in);
  const FitResult ln = fit(counts, Family::lognormal);
  const FitResult pl = fit(counts, Family::powerlaw);
  const FitResult zf = fit(counts, Family::zipf);
  const double elapsed = seconds_since(start);
  o.detail << "lognormal (" << ln.spec.alpha << ", " << *ln.spec.beta << ") mse " << ln.mse << "; powerlaw ("
           << pl.spec.alpha << ", " << *pl.spec.beta << ") mse " << pl.mse << "; zipf " << zf.spec.alpha << " mse "
           << zf.mse << "; " << elapsed << " s";
  o.require(std::abs(ln.spec.alpha - 1.371) <= 0.02, "lognormal alpha");
  o.require(std::abs(*ln.spec.beta - 1.986) <= 0.02, "lognormal beta");
  o.require(std::abs(pl.spec.alpha - 1.440) <= 0.02, "powerlaw alpha");
  o.require(std::abs(*pl.spec.beta - 3.745) <= 0.02, "powerlaw beta 3.745 (not identifiable from normalized data)");
  o.require(std::abs(zf.spec.alpha - 1.440) <= 0.02, "zipf alpha");
  o.require(ln.mse < pl.mse && ln.mse < zf.mse, "lognormal strictly smallest");
  o.require(elapsed < 5.0, "runtime < 5 s");
}

const std::vector<std::pair<std::size_t, std::size_t>> kCases{{30, 35}, {118, 130}, {300, 312}};

void generator_criterion(Outcome& o) {
  const auto start = Clock::now();
  std::size_t ok = 0;
  std::size_t restarts = 0;
  const std::size_t runs = 1000;
  for (std::size_t k = 0; k < runs; ++k) {
    const auto [n, m] = kCases[k % kCases.size()];
    const auto seq = pw_sequence(n, m, k);
    const auto result = generate_with_stats(seq.degrees, k);
    restarts += result.stats.restarts;
    if (realizes(result.graph, seq.degrees) && result.graph.edge_count() == m) ++ok;
  }
  const double elapsed = seconds_since(start);
  o.detail << ok << "/" << runs << " valid, " << restarts << " restarts, " << elapsed << " s";
  o.require(ok == runs, "all graphs simple, connected, exact degrees");
  o.require(elapsed < 60.0, "runtime < 60 s");
}

void density_criterion(Outcome& o) {
  const double expected_rounded[] = {1.167, 1.102, 1.040};
  for (std::size_t c = 0; c < kCases.size(); ++c) {
    const auto [n, m] = kCases[c];
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SimpleGraph g = generate(pw_sequence(n, m, seed), seed);
      const double rho = full_report(g).rho;
      o.require(rho == static_cast<double>(m) / static_cast<double>(n), "rho == m/n");
      o.require(std::round(rho * 1000.0) / 1000.0 == expected_rounded[c], "rho to 3 decimals");
    }
    o.detail << "n=" << n << " rho=" << static_cast<double>(m) / static_cast<double>(n) << "; ";
  }
}

void bands_criterion(Outcome& o) {
  std::vector<double> assort;
  std::vector<double> diam;
  std::vector<double> cc;
  std::vector<double> gap;
  const std::size_t seeds = 100;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const auto r = full_report(generate(pw_sequence(300, 312, seed), seed));
    if (r.assortativity) assort.push_back(*r.assortativity);
    if (r.diameter) diam.push_back(static_cast<double>(*r.diameter));
    if (r.clustering) cc.push_back(*r.clustering);
    if (r.spectral_gap) gap.push_back(*r.spectral_gap);
  }
  const double a = median(assort);
  const double d = median(diam);
  const double c = median(cc);
  const double l = median(gap);
  o.detail << seeds << " seeds; median assortativity " << a << " (reference -0.226), diameter " << d
           << " (22), clustering " << c << " (0.007), spectral gap " << l << " (2.86e-3)";
  o.require(a >= -0.35 && a <= -0.10, "assortativity band");
  o.require(d >= 15 && d <= 32, "diameter band");
  o.require(c >= 0.0 && c <= 0.03, "clustering band");
  o.require(l >= 5e-4 && l <= 2e-2, "spectral gap band");
}

void graphical_criterion(Outcome& o) {
  Rng rng(2024);
  std::vector<std::vector<std::size_t>> sequences;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng.below(50);
    const std::size_t cap = 1 + rng.below(n);
    std::vector<std::size_t> s(n);
    for (auto& d : s) d = rng.below(cap);
    sequences.push_back(std::move(s));
  }
  const auto start = Clock::now();
  std::size_t agree = 0;
  std::size_t graphical = 0;
  for (const auto& s : sequences) {
    const bool g = is_graphical(s);
    graphical += g ? 1 : 0;
    agree += g == oracle::erdos_gallai(s) ? 1 : 0;
  }
  const double elapsed = seconds_since(start);
  o.detail << agree << "/10000 agree (" << graphical << " graphical), " << elapsed << " s";
  o.require(agree == sequences.size(), "100% agreement");
  o.require(elapsed < 2.0, "runtime < 2 s");
}

void metrics_criterion(Outcome& o) {
  Rng rng(77);
  std::size_t checked = 0;
  double worst = 0.0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    const auto edges = oracle::random_simple_edges(n, 0.2 + 0.5 * rng.uniform01(), rng);
    const auto r = full_report(SimpleGraph(n, edges));
    const auto fw = oracle::floyd_warshall(n, edges);
    bool ok = r.diameter == fw.diameter && r.avg_shortest_path.has_value() == fw.average.has_value();
    if (ok && fw.average) worst = std::max(worst, std::abs(*r.avg_shortest_path - *fw.average));
    worst = std::max(worst, std::abs(*r.clustering - oracle::clustering_by_enumeration(n, edges)));
    const auto pa = oracle::pearson_assortativity(n, edges);
    ok = ok && pa.has_value() == r.assortativity.has_value();
    if (ok && pa) worst = std::max(worst, std::abs(*pa - *r.assortativity));
    const auto gap = oracle::spectral_gap_by_jacobi(n, edges);
    ok = ok && gap.has_value() == r.spectral_gap.has_value();
    if (ok && gap) worst_gap = std::max(worst_gap, std::abs(*gap - *r.spectral_gap));
    checked += ok ? 1 : 0;
  }
  o.detail << checked << "/100 consistent; max deviation " << worst << ", spectral " << worst_gap;
  o.require(checked == 100, "definedness and diameter agree");
  o.require(worst <= 1e-9, "path/clustering/assortativity within 1e-9");
  o.require(worst_gap <= 1e-6, "spectral gap within 1e-6");
}

void switch_criterion(Outcome& o) {
  GeneratorOptions options;
  options.verify_switches = true;
  std::size_t loops = 0;
  std::size_t parallels = 0;
  std::size_t graphs = 0;
  bool all_ok = true;
  try {
    for (std::uint64_t seed = 0; loops + parallels < 10000 || loops == 0 || parallels == 0; ++seed) {
      const auto [n, m] = kCases[seed % kCases.size()];
      const auto seq = pw_sequence(n, m, 10000 + seed);
      const auto result = generate_with_stats(seq.degrees, seed, options);
      loops += result.stats.self_loop_switches;
      parallels += result.stats.parallel_switches;
      all_ok = all_ok && realizes(result.graph, seq.degrees);
      ++graphs;
    }
  } catch (const InvariantError& e) {
    all_ok = false;
    o.detail << "invariant broken: " << e.what() << "; ";
  }
  o.detail << loops << " self-loop + " << parallels << " parallel switches verified over " << graphs << " graphs";
  o.require(all_ok, "degrees and connectivity preserved after every switch");
  o.require(loops + parallels >= 10000 && loops > 0 && parallels > 0, "10^4 switches of both kinds");
}

void assignment_criterion(Outcome& o) {
  Rng rng(555);
  std::size_t exact = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CostMatrix c(7, 7);
    std::vector<std::vector<double>> dense(7, std::vector<double>(7));
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) dense[i][j] = c(i, j) = static_cast<double>(rng.below(1000));
    }
    exact += assignment_cost(c, solve_assignment(c)) == oracle::brute_force_assignment(dense) ? 1 : 0;
  }
  CostMatrix big(500, 500);
  for (std::size_t i = 0; i < 500; ++i) {
    for (std::size_t j = 0; j < 500; ++j) big(i, j) = rng.uniform01() * 100.0;
  }
  const auto start = Clock::now();
  const Relabeling r = solve_assignment(big);
  const double elapsed = seconds_since(start);
  o.detail << exact << "/200 exact; n=500 in " << elapsed << " s";
  o.require(exact == 200, "exact cost equality");
  o.require(r.is_bijection(), "n=500 bijection");
  o.require(elapsed < 2.0, "n=500 under 2 s");
}

void baseline_criterion(Outcome& o) {
  Rng rng(404);
  std::size_t hh_ok = 0;
  std::size_t cm_ok = 0;
  std::size_t hm_ok = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const auto [n, m] = kCases[k % kCases.size()];
    const auto seq = pw_sequence(n, m, 50000 + k);
    const SimpleGraph hh = havel_hakimi_graph(seq.degrees);
    hh_ok += hh.degrees() == seq.degrees && is_graphical(hh.degrees()) ? 1 : 0;
    const WorkGraph cm = configuration_model(seq.degrees, rng);
    auto cm_deg = cm.degrees();
    auto target = seq.degrees;
    std::sort(cm_deg.begin(), cm_deg.end());
    std::sort(target.begin(), target.end());
    cm_ok += cm_deg == target ? 1 : 0;
    const SimpleGraph hm = horvat_modes_graph(seq.degrees, rng);
    hm_ok += realizes(hm, seq.degrees) ? 1 : 0;
  }

  const std::vector<std::size_t> d{1, 2, 2, 3, 3, 3, 4, 4, 5, 5};
  const double total = 32.0;
  const int trials = 10000;
  std::vector<double> sum(d.size(), 0.0);
  for (int t = 0; t < trials; ++t) {
    const auto deg = chung_lu_graph(d, rng).degrees();
    for (std::size_t i = 0; i < d.size(); ++i) sum[i] += static_cast<double>(deg[i]);
  }
  std::size_t cl_ok = 0;
  bool clip_free = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double expected = 0.0;
    double variance = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j == i) continue;
      const double p = static_cast<double>(d[i] * d[j]) / total;
      clip_free = clip_free && p < 1.0;
      expected += p;
      variance += p * (1.0 - p);
    }
    cl_ok += std::abs(sum[i] / trials - expected) <= 3.0 * std::sqrt(variance / trials) ? 1 : 0;
  }
  o.detail << "HH " << hh_ok << "/500, CM " << cm_ok << "/500, HM " << hm_ok << "/500, CL " << cl_ok
           << "/10 nodes within 3 sigma";
  o.require(hh_ok == 500, "HH exact degrees");
  o.require(cm_ok == 500, "CM exact degree multiset");
  o.require(hm_ok == 500, "HM connected, simple, exact");
  o.require(clip_free && cl_ok == d.size(), "CL within 3 sigma");
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism_criterion(Outcome& o) {
  using namespace cybergraph::cli;
  std::size_t identical = 0;
  std::size_t cases = 0;
  for (const auto& model : known_models()) {
    GenCommand gen;
    gen.n = 118;
    gen.m = 130;
    gen.seed = 31;
    gen.model = model;
    gen.out = "graph.txt";
    const Artifacts first = run_gen(gen);
    ++cases;
    identical += replay(gen_manifest(gen, first)).empty() && run_gen(gen) == first ? 1 : 0;
  }
  CompareCommand cmp;
  cmp.n = 30;
  cmp.m = 35;
  cmp.seed = 5;
  cmp.seeds = 5;
  cmp.json_out = "compare.json";
  cmp.text_out = "compare.txt";
  const Artifacts report = run_compare(cmp);
  ++cases;
  identical += replay(compare_manifest(cmp, report)).empty() ? 1 : 0;

  const auto dir = std::filesystem::temp_directory_path() / "cybergraph_acceptance";
  std::filesystem::create_directories(dir);
  const std::string tool = CYBERGRAPH_TOOL;
  const std::string out = (dir / "g.txt").string();
  const std::string quiet = " > /dev/null 2>&1";
  bool cli_ok = std::system((tool + " gen -n 300 -m 312 --seed 9 -o " + out + quiet).c_str()) == 0;
  const std::string bytes = read_bytes(out);
  cli_ok = cli_ok && std::system((tool + " replay " + out + ".manifest.json" + quiet).c_str()) == 0;
  cli_ok = cli_ok && std::system((tool + " gen -n 300 -m 312 --seed 9 -o " + out + quiet).c_str()) == 0;
  cli_ok = cli_ok && read_bytes(out) == bytes && !bytes.empty();
  std::filesystem::remove_all(dir);
  ++cases;
  identical += cli_ok ? 1 : 0;

  o.detail << identical << "/" << cases << " invocations byte-identical on replay";
  o.require(identical == cases, "byte-identical artifacts");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 distribution fit", fit_criterion},
      {"2 generator validity", generator_criterion},
      {"3 density exactness", density_criterion},
      {"4 statistical bands n=300", bands_criterion},
      {"5 graphicality oracle", graphical_criterion},
      {"6 metrics oracle", metrics_criterion},
      {"7 edge-switch preservation", switch_criterion},
      {"8 assignment optimality", assignment_criterion},
      {"9 baseline properties", baseline_criterion},
      {"10 determinism", determinism_criterion},
  };
  std::size_t passed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    passed += o.pass ? 1 : 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail.str() << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed" << std::endl;
  return passed == criteria.size() ? 0 : 1;
}
