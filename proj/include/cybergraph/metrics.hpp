#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "cybergraph/errors.hpp"
#include "cybergraph/graph.hpp"

namespace cybergraph {

/// Global characteristics of one graph. Undefined quantities are nullopt.
struct MetricsReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double rho = 0.0;
  /// No self-loops and no parallel edges.
  bool graphical = true;
  bool connected = false;
  std::optional<std::size_t> diameter;
  std::optional<double> avg_shortest_path;
  std::optional<double> clustering;
  std::optional<double> assortativity;
  std::optional<double> spectral_gap;
};

enum class ClusteringMode {
  /// Mean of local coefficients; nodes of degree < 2 count as 0.
  average_local,
  /// 3 * triangles / connected triples.
  transitivity,
};

inline constexpr double kSpectralTolerance = 1e-9;

template <EdgeListGraph G>
double density(const G& g) {
  if (g.node_count() == 0) throw InputError("density of an empty graph");
  return static_cast<double>(std::span<const Edge>(g.edges()).size()) / static_cast<double>(g.node_count());
}

struct PathStats {
  std::optional<std::size_t> diameter;
  std::optional<double> average;
};

/// All-pairs BFS. Both values are undefined for a disconnected graph; the
/// average is also undefined with fewer than two nodes.
template <EdgeListGraph G>
PathStats shortest_path_stats(const G& g) {
  const auto adj = support_adjacency(g);
  const std::size_t n = adj.size();
  if (n == 0) return {};
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n);
  std::queue<Label> frontier;
  std::size_t longest = 0;
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), unreached);
    dist[s] = 0;
    frontier.push(static_cast<Label>(s));
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const Label v = frontier.front();
      frontier.pop();
      for (Label w : adj[v]) {
        if (dist[w] == unreached) {
          dist[w] = dist[v] + 1;
          ++reached;
          total += static_cast<double>(dist[w]);
          longest = std::max(longest, dist[w]);
          frontier.push(w);
        }
      }
    }
    if (reached != n) return {};
  }
  PathStats stats;
  stats.diameter = longest;
  if (n > 1) stats.average = total / (static_cast<double>(n) * static_cast<double>(n - 1));
  return stats;
}

inline double clustering_coefficient(const SimpleGraph& g, ClusteringMode mode = ClusteringMode::average_local) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("clustering of an empty graph");
  std::vector<char> mark(n, 0);
  double local_sum = 0.0;
  double closed = 0.0;
  double triples = 0.0;
  for (Label v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    const std::size_t d = nbrs.size();
    if (d < 2) continue;
    for (Label w : nbrs) mark[w] = 1;
    std::size_t links = 0;
    for (Label w : nbrs) {
      for (Label x : g.neighbors(w)) links += (x > w && mark[x]) ? 1 : 0;
    }
    for (Label w : nbrs) mark[w] = 0;
    const double pairs = static_cast<double>(d) * static_cast<double>(d - 1) / 2.0;
    local_sum += static_cast<double>(links) / pairs;
    closed += static_cast<double>(links);
    triples += pairs;
  }
  if (mode == ClusteringMode::transitivity) return triples > 0.0 ? closed / triples : 0.0;
  return local_sum / static_cast<double>(n);
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Degrees count loops twice and parallel copies separately. Undefined
/// with no edges or when all endpoint degrees are equal.
template <EdgeListGraph G>
std::optional<double> assortativity(const G& g) {
  const std::span<const Edge> edges = g.edges();
  if (edges.empty()) return std::nullopt;
  std::vector<double> deg(g.node_count(), 0.0);
  for (const Edge& e : edges) {
    deg[e.u] += 1.0;
    deg[e.v] += 1.0;
  }
  // Both orientations make the two marginals identical.
  double sx = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const Edge& e : edges) {
    const double a = deg[e.u];
    const double b = deg[e.v];
    sx += a + b;
    sxx += a * a + b * b;
    sxy += 2.0 * a * b;
  }
  const double count = 2.0 * static_cast<double>(edges.size());
  const double mean = sx / count;
  const double var = sxx / count - mean * mean;
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return std::nullopt;
  return std::clamp((sxy / count - mean * mean) / var, -1.0, 1.0);
}

/// Spectrum of I - D^-1/2 A D^-1/2, ascending. A counts multiplicity and a
/// loop adds 2 to its diagonal entry; rows of isolated nodes are zero.
template <EdgeListGraph G>
std::vector<double> normalized_laplacian_spectrum(const G& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : std::span<const Edge>(g.edges())) {
    if (e.is_loop()) {
      adj(e.u, e.u) += 2.0;
    } else {
      adj(e.u, e.v) += 1.0;
      adj(e.v, e.u) += 1.0;
    }
  }
  const Eigen::VectorXd deg = adj.rowwise().sum();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) inv_sqrt(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
  Eigen::MatrixXd lap = -(inv_sqrt.asDiagonal() * adj * inv_sqrt.asDiagonal());
  for (Eigen::Index i = 0; i < n; ++i) lap(i, i) += deg(i) > 0.0 ? 1.0 : 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw AlgorithmError("eigen-decomposition did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

/// Smallest normalized Laplacian eigenvalue above 1e-9. Throws InputError
/// for fewer than two nodes or an edgeless graph.
template <EdgeListGraph G>
double spectral_gap(const G& g) {
  if (g.node_count() < 2) throw InputError("spectral gap needs at least 2 nodes");
  for (double x : normalized_laplacian_spectrum(g)) {
    if (x > kSpectralTolerance) return x;
  }
  throw InputError("spectral gap undefined: no non-zero eigenvalue (edgeless graph)");
}

struct ReportOptions {
  ClusteringMode clustering = ClusteringMode::average_local;
};

namespace detail {

template <EdgeListGraph G>
MetricsReport common_report(const G& g) {
  MetricsReport r;
  r.n = g.node_count();
  r.m = std::span<const Edge>(g.edges()).size();
  if (r.n == 0) return r;
  r.rho = density(g);
  r.connected = is_connected(g);
  if (r.connected) {
    const PathStats sp = shortest_path_stats(g);
    r.diameter = sp.diameter;
    r.avg_shortest_path = sp.average;
  }
  r.assortativity = assortativity(g);
  if (r.n >= 2 && r.m > 0) r.spectral_gap = spectral_gap(g);
  return r;
}

}  // namespace detail

inline MetricsReport full_report(const SimpleGraph& g, const ReportOptions& options = {}) {
  MetricsReport r = detail::common_report(g);
  if (r.n > 0) r.clustering = clustering_coefficient(g, options.clustering);
  return r;
}

/// Multigraph form: clustering is undefined while a loop or parallel edge
/// is present; everything else is measured on the raw multigraph.
inline MetricsReport full_report(const WorkGraph& g, const ReportOptions& options = {}) {
  MetricsReport r = detail::common_report(g);
  r.graphical = g.is_simple();
  if (r.graphical && r.n > 0) r.clustering = clustering_coefficient(finalize(g), options.clustering);
  return r;
}

}  // namespace cybergraph
