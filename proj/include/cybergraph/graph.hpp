#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cybergraph/errors.hpp"
#include "cybergraph/rng.hpp"

namespace cybergraph {

/// Dense node label in [0, n).
using Label = std::uint32_t;

/// Unordered pair stored with u <= v.
struct Edge {
  Label u = 0;
  Label v = 0;

  bool is_loop() const { return u == v; }
  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Label a, Label b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t pair_key(Label a, Label b) {
  const Edge e = make_edge(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

/// Anything exposing a node count and a flat list of (possibly repeated) edges.
template <class G>
concept EdgeListGraph = requires(const G& g) {
  { g.node_count() } -> std::convertible_to<std::size_t>;
  { g.edges() } -> std::convertible_to<std::span<const Edge>>;
};

/// Undirected graph without self-loops or parallel edges. Immutable once built.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws InputError on a self-loop, a repeated pair or a label >= n.
  SimpleGraph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has a label outside [0, " + std::to_string(n) + ")");
      }
      if (e.is_loop()) throw InputError("self-loop at node " + std::to_string(e.u));
      e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw InputError("parallel edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    }
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Sorted, each pair once with u < v.
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Label> neighbors(Label v) const { return adj_.at(v); }
  std::size_t degree(Label v) const { return adj_.at(v).size(); }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v) d[v] = adj_[v].size();
    return d;
  }

  bool has_edge(Label a, Label b) const {
    if (a >= n_ || b >= n_) return false;
    const auto& list = adj_[a];
    return std::binary_search(list.begin(), list.end(), b);
  }

  bool operator==(const SimpleGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Label>> adj_;
};

/// Undirected multigraph used while a graph is being built.
///
/// Keeps two repair worklists in step with the edge multiset:
/// self_loops() holds one entry per loop currently present, and
/// parallel_pairs() holds multiplicity-1 entries for every pair that
/// occurs more than once. Removing an edge drops the matching entry.
class WorkGraph {
 public:
  explicit WorkGraph(std::size_t n = 0) : n_(n), degree_(n, 0) {}

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge_at(std::size_t i) const { return edges_.at(i); }

  /// A loop counts twice.
  std::size_t degree(Label v) const { return degree_.at(v); }
  const std::vector<std::size_t>& degrees() const { return degree_; }

  std::size_t multiplicity(Label a, Label b) const {
    auto it = slots_.find(pair_key(a, b));
    return it == slots_.end() ? 0 : it->second.size();
  }
  bool has_edge(Label a, Label b) const { return multiplicity(a, b) > 0; }

  const std::vector<Label>& self_loops() const { return self_loops_; }
  const std::vector<Edge>& parallel_pairs() const { return parallel_; }
  bool is_simple() const { return self_loops_.empty() && parallel_.empty(); }

  void add_edge(Label a, Label b) {
    check_label(a);
    check_label(b);
    const Edge e = make_edge(a, b);
    auto& slot = slots_[pair_key(a, b)];
    if (e.is_loop()) {
      self_loops_.push_back(e.u);
    } else if (!slot.empty()) {
      parallel_.push_back(e);
    }
    slot.push_back(edges_.size());
    edges_.push_back(e);
    ++degree_[e.u];
    ++degree_[e.v];
  }

  /// Removes one copy of {a,b}. Throws InputError if the pair is absent.
  void remove_edge(Label a, Label b) {
    check_label(a);
    check_label(b);
    const Edge e = make_edge(a, b);
    auto it = slots_.find(pair_key(a, b));
    if (it == slots_.end() || it->second.empty()) {
      throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") not present");
    }
    const bool was_multiple = it->second.size() > 1;
    const std::size_t index = it->second.back();
    it->second.pop_back();
    if (it->second.empty()) slots_.erase(it);

    const std::size_t last = edges_.size() - 1;
    if (index != last) {
      const Edge moved = edges_[last];
      auto& moved_slot = slots_.at(pair_key(moved.u, moved.v));
      *std::find(moved_slot.begin(), moved_slot.end(), last) = index;
      edges_[index] = moved;
    }
    edges_.pop_back();
    --degree_[e.u];
    --degree_[e.v];

    if (e.is_loop()) {
      erase_last(self_loops_, e.u);
    } else if (was_multiple) {
      erase_last(parallel_, e);
    }
  }

 private:
  void check_label(Label v) const {
    if (v >= n_) {
      throw InputError("label " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
    }
  }

  template <class T>
  static void erase_last(std::vector<T>& list, const T& value) {
    auto it = std::find(list.rbegin(), list.rend(), value);
    if (it != list.rend()) list.erase(std::next(it).base());
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> slots_;
  std::vector<Label> self_loops_;
  std::vector<Edge> parallel_;
};

/// Adjacency of the simple support: loops dropped, multiplicities collapsed.
template <EdgeListGraph G>
std::vector<std::vector<Label>> support_adjacency(const G& g) {
  std::vector<std::vector<Label>> adj(g.node_count());
  for (const Edge& e : std::span<const Edge>(g.edges())) {
    if (e.is_loop()) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

/// Component id per node (ids in order of lowest member label) and count.
template <EdgeListGraph G>
std::pair<std::vector<std::size_t>, std::size_t> connected_components(const G& g) {
  const auto adj = support_adjacency(g);
  const std::size_t n = adj.size();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::size_t count = 0;
  std::vector<Label> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = count;
    stack.push_back(static_cast<Label>(s));
    while (!stack.empty()) {
      const Label v = stack.back();
      stack.pop_back();
      for (Label w : adj[v]) {
        if (comp[w] == unset) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

/// True iff a traversal from node 0 reaches every node.
template <EdgeListGraph G>
bool is_connected(const G& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("is_connected needs at least one node");
  const auto adj = support_adjacency(g);
  std::vector<char> seen(n, 0);
  std::queue<Label> frontier;
  seen[0] = 1;
  frontier.push(0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Label v = frontier.front();
    frontier.pop();
    for (Label w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

/// Converts a repaired multigraph. Throws InvariantError if a loop or a
/// parallel edge is still present.
inline SimpleGraph finalize(const WorkGraph& g) {
  if (!g.is_simple()) {
    throw InvariantError("cannot finalize: " + std::to_string(g.self_loops().size()) +
                         " self-loop(s) and " + std::to_string(g.parallel_pairs().size()) +
                         " parallel edge(s) remain");
  }
  return SimpleGraph(g.node_count(), std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

/// Simple support of a multigraph.
inline SimpleGraph simple_support(const WorkGraph& g) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop()) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(g.node_count(), std::move(edges));
}

/// Weighted pool of nodes; a member's weight is its remaining degree.
///
/// Backed by a Fenwick tree over the label range so a draw costs O(log n).
class NodePool {
 public:
  explicit NodePool(std::size_t capacity = 0)
      : remaining_(capacity, 0), member_(capacity, 0), tree_(capacity + 1, 0) {}

  std::size_t capacity() const { return remaining_.size(); }
  std::size_t size() const { return members_; }
  bool empty() const { return members_ == 0; }
  bool contains(Label v) const { return v < member_.size() && member_[v]; }
  std::size_t remaining(Label v) const { return remaining_.at(v); }
  std::size_t total_remaining() const { return total_; }

  void insert(Label v, std::size_t remaining_degree) {
    if (v >= capacity()) throw InputError("pool label out of range");
    if (member_[v]) throw InputError("node " + std::to_string(v) + " already in pool");
    member_[v] = 1;
    ++members_;
    remaining_[v] = remaining_degree;
    total_ += remaining_degree;
    fenwick_add(v, static_cast<std::int64_t>(remaining_degree));
  }

  /// Removes v and returns its remaining degree.
  std::size_t erase(Label v) {
    if (!contains(v)) throw InputError("node " + std::to_string(v) + " not in pool");
    const std::size_t r = remaining_[v];
    member_[v] = 0;
    --members_;
    total_ -= r;
    fenwick_add(v, -static_cast<std::int64_t>(r));
    remaining_[v] = 0;
    return r;
  }

  /// Draws v with probability remaining(v) / total_remaining() and
  /// decrements it. Throws AlgorithmError when nothing is left to draw.
  Label sample(Rng& rng) {
    if (total_ == 0) throw AlgorithmError("node pool exhausted");
    std::uint64_t target = rng.below(total_);
    // Fenwick descent: smallest index whose prefix sum exceeds target.
    std::size_t pos = 0;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && static_cast<std::uint64_t>(tree_[next]) <= target) {
        pos = next;
        target -= static_cast<std::uint64_t>(tree_[next]);
      }
    }
    const auto v = static_cast<Label>(pos);
    --remaining_[v];
    --total_;
    fenwick_add(v, -1);
    return v;
  }

 private:
  void fenwick_add(Label v, std::int64_t delta) {
    for (std::size_t i = static_cast<std::size_t>(v) + 1; i < tree_.size(); i += i & (~i + 1)) {
      tree_[i] += delta;
    }
  }

  std::vector<std::size_t> remaining_;
  std::vector<char> member_;
  std::vector<std::int64_t> tree_;
  std::size_t members_ = 0;
  std::size_t total_ = 0;
};

/// Free-function form of NodePool::sample.
inline Label sample_node(NodePool& pool, Rng& rng) { return pool.sample(rng); }

}  // namespace cybergraph
