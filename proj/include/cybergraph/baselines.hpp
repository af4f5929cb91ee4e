#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cybergraph/degree_seq.hpp"
#include "cybergraph/errors.hpp"
#include "cybergraph/graph.hpp"
#include "cybergraph/rng.hpp"

namespace cybergraph {

/// Uniform random matching of degree stubs. The result keeps every
/// self-loop and repeated pair the matching produces.
inline WorkGraph configuration_model(std::span<const std::size_t> degrees, Rng& rng) {
  std::vector<Label> stubs;
  for (std::size_t v = 0; v < degrees.size(); ++v) stubs.insert(stubs.end(), degrees[v], static_cast<Label>(v));
  if (stubs.size() % 2 != 0) throw InputError("odd number of stubs (" + std::to_string(stubs.size()) + ")");
  shuffle(stubs.begin(), stubs.end(), rng);
  WorkGraph g(degrees.size());
  for (std::size_t i = 0; i < stubs.size(); i += 2) g.add_edge(stubs[i], stubs[i + 1]);
  return g;
}

/// Deterministic largest-first realization: the node with the most
/// remaining degree (lowest label on ties) links to the nodes with the next
/// largest remaining degrees. Possibly disconnected.
inline SimpleGraph havel_hakimi_graph(std::span<const std::size_t> degrees) {
  if (!is_graphical(degrees)) throw InputError("degree sequence is not graphical");
  const std::size_t n = degrees.size();
  std::vector<std::size_t> rest(degrees.begin(), degrees.end());
  std::vector<Label> order(n);
  std::vector<Edge> edges;
  for (;;) {
    std::iota(order.begin(), order.end(), Label{0});
    std::stable_sort(order.begin(), order.end(), [&](Label a, Label b) { return rest[a] > rest[b]; });
    const Label hub = order.front();
    const std::size_t need = rest[hub];
    if (need == 0) break;
    rest[hub] = 0;
    for (std::size_t i = 1; i <= need; ++i) {
      const Label w = order[i];
      if (rest[w] == 0) throw InvariantError("largest-first construction ran out of partners");
      --rest[w];
      edges.push_back(make_edge(hub, w));
    }
  }
  return SimpleGraph(n, std::move(edges));
}

/// Independent edges: {i,j} is present with probability
/// min(d_i * d_j / sum(d), 1). Degrees hold only in expectation.
inline SimpleGraph chung_lu_graph(std::span<const std::size_t> degrees, Rng& rng) {
  const std::size_t n = degrees.size();
  if (n < 2) throw InputError("Chung-Lu needs at least 2 nodes");
  const auto total = static_cast<double>(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}));
  std::vector<Edge> edges;
  if (total == 0.0) return SimpleGraph(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::min(static_cast<double>(degrees[i]) * static_cast<double>(degrees[j]) / total, 1.0);
      if (rng.uniform01() < p) edges.push_back({static_cast<Label>(i), static_cast<Label>(j)});
    }
  }
  return SimpleGraph(n, std::move(edges));
}

namespace detail {

/// Marks edges that lie on a cycle (non-bridges) of a simple graph given as
/// an edge vector. Iterative low-link DFS.
inline std::vector<char> cycle_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<Label, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, unset);
  std::vector<std::size_t> low(n, 0);
  std::vector<char> on_cycle(edges.size(), 1);
  struct Frame {
    Label v;
    std::size_t parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::size_t clock = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != unset) continue;
    disc[root] = low[root] = clock++;
    stack.push_back({static_cast<Label>(root), unset, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        const auto [w, id] = adj[f.v][f.next++];
        if (id == f.parent_edge) continue;
        if (disc[w] == unset) {
          disc[w] = low[w] = clock++;
          stack.push_back({w, id, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& parent = stack.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (low[done.v] > disc[parent.v]) on_cycle[done.parent_edge] = 0;
      }
    }
  }
  return on_cycle;
}

}  // namespace detail

/// Connected realization built from havel_hakimi_graph: while the graph has
/// several components, a cycle edge (a,b) of one component and an edge
/// (c,d) of another are rewired crosswise into (a,c),(b,d) or (a,d),(b,c).
/// Removing a cycle edge keeps its component whole, so each swap merges
/// exactly two components and leaves every degree unchanged.
inline SimpleGraph horvat_modes_graph(std::span<const std::size_t> degrees, Rng& rng) {
  const std::size_t n = degrees.size();
  const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (n == 0) throw InputError("empty degree sequence");
  if (sum / 2 + 1 < n || sum % 2 != 0) throw InputError("degree sum must be even and at least 2(n-1)");
  if (n > 1 && std::find(degrees.begin(), degrees.end(), std::size_t{0}) != degrees.end()) {
    throw InputError("zero-degree node cannot be connected");
  }
  const SimpleGraph start = havel_hakimi_graph(degrees);
  std::vector<Edge> edges(start.edges().begin(), start.edges().end());

  for (std::size_t swaps = 0;; ++swaps) {
    const SimpleGraph current(n, edges);
    auto [comp, count] = connected_components(current);
    if (count <= 1) return current;
    if (swaps > n) throw AlgorithmError("component merging did not converge");

    edges.assign(current.edges().begin(), current.edges().end());
    const auto on_cycle = detail::cycle_edges(n, edges);
    std::vector<std::vector<std::size_t>> cycle_by_comp(count);
    std::vector<std::vector<std::size_t>> edges_by_comp(count);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edges_by_comp[comp[edges[i].u]].push_back(i);
      if (on_cycle[i]) cycle_by_comp[comp[edges[i].u]].push_back(i);
    }
    std::vector<std::size_t> donors;
    for (std::size_t c = 0; c < count; ++c) {
      if (!cycle_by_comp[c].empty()) donors.push_back(c);
    }
    if (donors.empty()) throw AlgorithmError("no component has a cycle edge to give up");

    const std::size_t a_comp = donors[rng.below(donors.size())];
    std::size_t b_comp = rng.below(count - 1);
    if (b_comp >= a_comp) ++b_comp;
    const Edge first = edges[cycle_by_comp[a_comp][rng.below(cycle_by_comp[a_comp].size())]];
    const Edge second = edges[edges_by_comp[b_comp][rng.below(edges_by_comp[b_comp].size())]];

    std::erase(edges, first);
    std::erase(edges, second);
    if (rng.coin()) {
      edges.push_back(make_edge(first.u, second.u));
      edges.push_back(make_edge(first.v, second.v));
    } else {
      edges.push_back(make_edge(first.u, second.v));
      edges.push_back(make_edge(first.v, second.u));
    }
  }
}

}  // namespace cybergraph
