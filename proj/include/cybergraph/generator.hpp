#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cybergraph/degree_seq.hpp"
#include "cybergraph/errors.hpp"
#include "cybergraph/graph.hpp"
#include "cybergraph/rng.hpp"

namespace cybergraph {

struct GeneratorOptions {
  /// Extra attempts after the first one fails.
  std::size_t max_restarts = 20;
  /// Candidate edge draws allowed per repair item, as a multiple of m.
  std::size_t switch_budget_factor = 50;
  /// Recheck degrees and connectivity after every edge switch.
  bool verify_switches = false;
};

struct SwitchStats {
  std::size_t self_loop_switches = 0;
  std::size_t parallel_switches = 0;
  std::size_t candidate_draws = 0;
  std::size_t restarts = 0;
};

/// Raised when a repair runs out of candidate draws or the tree phase
/// stalls; generate() answers it with a restart.
class RestartRequired : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

/// Mutable state of one generation attempt.
///
/// `visited` and `unvisited` hold every node's remaining degree. The node
/// of maximum target degree (lowest label on ties) starts in `visited`.
struct GenerationState {
  GenerationState(std::span<const std::size_t> degrees, Rng random, std::size_t budget)
      : target(degrees.begin(), degrees.end()),
        graph(degrees.size()),
        visited(degrees.size()),
        unvisited(degrees.size()),
        rng(std::move(random)),
        switch_budget(budget) {
    const auto top = std::max_element(target.begin(), target.end()) - target.begin();
    for (std::size_t v = 0; v < target.size(); ++v) {
      auto& pool = static_cast<std::ptrdiff_t>(v) == top ? visited : unvisited;
      pool.insert(static_cast<Label>(v), target[v]);
    }
  }

  std::size_t remaining_total() const { return visited.total_remaining() + unvisited.total_remaining(); }

  std::vector<std::size_t> target;
  WorkGraph graph;
  NodePool visited;
  NodePool unvisited;
  Rng rng;
  std::size_t switch_budget;
  bool verify_switches = false;
  SwitchStats stats;
};

namespace detail {

inline void verify_switch(const GenerationState& state) {
  if (state.graph.degrees() != state.target) throw InvariantError("edge switch changed a node degree");
  if (!is_connected(state.graph)) throw InvariantError("edge switch disconnected the graph");
}

/// Uniform edge from the multiset, in random orientation.
inline Edge draw_oriented_edge(GenerationState& state) {
  if (state.graph.edge_count() == 0) throw RestartRequired("no edges to switch with");
  Edge e = state.graph.edge_at(state.rng.below(state.graph.edge_count()));
  if (state.rng.coin()) std::swap(e.u, e.v);
  return e;
}

inline void charge_draw(GenerationState& state, std::size_t& draws, const char* what) {
  ++state.stats.candidate_draws;
  if (++draws > state.switch_budget) {
    throw RestartRequired(std::string("switch budget exhausted while removing ") + what);
  }
}

}  // namespace detail

/// Spanning tree phase: n-1 times, join a draw from `visited` to a draw from
/// `unvisited` and move the latter over. Throws RestartRequired if
/// `visited` runs dry while nodes are still unvisited.
inline void generate_tree(GenerationState& state) {
  while (!state.unvisited.empty()) {
    if (state.visited.total_remaining() == 0) {
      throw RestartRequired("tree phase stalled with " + std::to_string(state.unvisited.size()) +
                            " node(s) unvisited");
    }
    const Label u = sample_node(state.visited, state.rng);
    const Label v = sample_node(state.unvisited, state.rng);
    state.visited.insert(v, state.unvisited.erase(v));
    state.graph.add_edge(u, v);
  }
}

/// Pairs up the leftover degree: each new edge joins two sequential draws
/// from `visited`. Loops and repeats are recorded for repair.
inline void add_remaining_edges(GenerationState& state) {
  if (state.visited.total_remaining() % 2 != 0) throw InvariantError("odd remaining degree after tree phase");
  while (state.visited.total_remaining() > 0) {
    const Label u = sample_node(state.visited, state.rng);
    const Label v = sample_node(state.visited, state.rng);
    state.graph.add_edge(u, v);
  }
}

/// Loop at u and edge (s,t) with u, s, t distinct and u not adjacent to
/// either: replace them by (u,s) and (u,t).
inline void remove_self_loops(GenerationState& state) {
  WorkGraph& g = state.graph;
  while (!g.self_loops().empty()) {
    const Label u = g.self_loops()[state.rng.below(g.self_loops().size())];
    std::size_t draws = 0;
    for (;;) {
      detail::charge_draw(state, draws, "a self-loop");
      const Edge e = detail::draw_oriented_edge(state);
      const Label s = e.u;
      const Label t = e.v;
      if (s == t || s == u || t == u) continue;
      if (g.has_edge(u, s) || g.has_edge(u, t)) continue;
      g.remove_edge(u, u);
      g.remove_edge(s, t);
      g.add_edge(u, s);
      g.add_edge(u, t);
      ++state.stats.self_loop_switches;
      if (state.verify_switches) detail::verify_switch(state);
      break;
    }
  }
}

/// Duplicate (u,v) at the front of the worklist and edge (x,y) on four
/// distinct nodes: replace one (u,v) copy and (x,y) by (u,x),(v,y), or by
/// (u,y),(v,x) if the first pair is taken.
inline void remove_parallel_edges(GenerationState& state) {
  WorkGraph& g = state.graph;
  if (!g.self_loops().empty()) throw InvariantError("self-loops must be removed before parallel edges");
  while (!g.parallel_pairs().empty()) {
    const Label u = g.parallel_pairs().front().u;
    const Label v = g.parallel_pairs().front().v;
    std::size_t draws = 0;
    for (;;) {
      detail::charge_draw(state, draws, "a parallel edge");
      const Edge e = detail::draw_oriented_edge(state);
      const Label x = e.u;
      const Label y = e.v;
      if (x == y || x == u || x == v || y == u || y == v) continue;
      Label a = 0;
      Label b = 0;
      if (!g.has_edge(u, x) && !g.has_edge(v, y)) {
        a = x;
        b = y;
      } else if (!g.has_edge(u, y) && !g.has_edge(v, x)) {
        a = y;
        b = x;
      } else {
        continue;
      }
      g.remove_edge(u, v);
      g.remove_edge(x, y);
      g.add_edge(u, a);
      g.add_edge(v, b);
      ++state.stats.parallel_switches;
      if (state.verify_switches) detail::verify_switch(state);
      break;
    }
  }
}

struct GenerationResult {
  SimpleGraph graph;
  SwitchStats stats;
};

/// Checks the preconditions of generate(): even sum, graphical, m >= n-1 and
/// no zero entries (a zero-degree node cannot be connected when n > 1).
inline void validate_generation_input(std::span<const std::size_t> degrees) {
  const std::size_t n = degrees.size();
  if (n == 0) throw InputError("empty degree sequence");
  const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (sum % 2 != 0) throw InputError("degree sum " + std::to_string(sum) + " is odd");
  if (sum / 2 + 1 < n) throw InputError("too few edges for a connected graph: m < n-1");
  if (n > 1 && std::find(degrees.begin(), degrees.end(), std::size_t{0}) != degrees.end()) {
    throw InputError("zero-degree node in a sequence with more than one node");
  }
  if (!is_graphical(degrees)) throw InputError("degree sequence is not graphical");
}

/// Simple connected graph with degree(v) == degrees[v] for every v.
///
/// Attempt k runs on Rng::stream(seed, k). Throws AlgorithmError once
/// 1 + max_restarts attempts have failed.
inline GenerationResult generate_with_stats(std::span<const std::size_t> degrees, std::uint64_t seed,
                                            const GeneratorOptions& options = {}) {
  validate_generation_input(degrees);
  const std::size_t n = degrees.size();
  if (n == 1) return {SimpleGraph(1, {}), {}};
  const std::size_t m = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) / 2;

  SwitchStats totals;
  std::string last_failure;
  for (std::size_t attempt = 0; attempt <= options.max_restarts; ++attempt) {
    GenerationState state(degrees, Rng::stream(seed, attempt), options.switch_budget_factor * m);
    state.verify_switches = options.verify_switches;
    try {
      generate_tree(state);
      add_remaining_edges(state);
      remove_self_loops(state);
      remove_parallel_edges(state);
      totals.self_loop_switches += state.stats.self_loop_switches;
      totals.parallel_switches += state.stats.parallel_switches;
      totals.candidate_draws += state.stats.candidate_draws;
      totals.restarts = attempt;
      return {finalize(state.graph), totals};
    } catch (const RestartRequired& e) {
      last_failure = e.what();
      totals.self_loop_switches += state.stats.self_loop_switches;
      totals.parallel_switches += state.stats.parallel_switches;
      totals.candidate_draws += state.stats.candidate_draws;
    }
  }
  throw AlgorithmError("generation failed after " + std::to_string(options.max_restarts) +
                       " restarts; last failure: " + last_failure);
}

inline SimpleGraph generate(std::span<const std::size_t> degrees, std::uint64_t seed,
                            const GeneratorOptions& options = {}) {
  return generate_with_stats(degrees, seed, options).graph;
}

inline SimpleGraph generate(const DegreeSequence& sequence, std::uint64_t seed, const GeneratorOptions& options = {}) {
  return generate(std::span<const std::size_t>(sequence.degrees), seed, options);
}

}  // namespace cybergraph
