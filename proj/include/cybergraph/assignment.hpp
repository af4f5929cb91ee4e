#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cybergraph/errors.hpp"
#include "cybergraph/graph.hpp"

namespace cybergraph {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Planar position of every label 0..n-1.
using PositionMap = std::vector<Point>;

/// Dense row-major matrix; rows are power nodes, columns cyber nodes.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// perm[cyber label] = new label, i.e. the power node it is matched to.
struct Relabeling {
  std::vector<Label> perm;

  static Relabeling identity(std::size_t n) {
    Relabeling r;
    r.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.perm[i] = static_cast<Label>(i);
    return r;
  }

  bool is_bijection() const {
    std::vector<char> seen(perm.size(), 0);
    for (Label p : perm) {
      if (p >= perm.size() || seen[p]) return false;
      seen[p] = 1;
    }
    return true;
  }
};

/// C(u, v) = Euclidean distance between power node u and cyber node v.
inline CostMatrix build_cost(const PositionMap& power, const PositionMap& cyber) {
  if (power.size() != cyber.size()) {
    throw InputError("position maps differ in size: " + std::to_string(power.size()) + " power vs " +
                     std::to_string(cyber.size()) + " cyber");
  }
  CostMatrix c(power.size(), cyber.size());
  for (std::size_t u = 0; u < power.size(); ++u) {
    for (std::size_t v = 0; v < cyber.size(); ++v) {
      c(u, v) = std::hypot(power[u].x - cyber[v].x, power[u].y - cyber[v].y);
    }
  }
  return c;
}

/// Minimum-cost perfect matching, O(n^3) Hungarian method with row/column
/// potentials and shortest augmenting paths. Ties resolve toward the lowest
/// column index.
inline Relabeling solve_assignment(const CostMatrix& c) {
  if (c.rows() != c.cols()) throw InputError("cost matrix must be square");
  const std::size_t n = c.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(c(i, j))) throw InputError("cost matrix has a non-finite entry");
    }
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based; column 0 is the virtual root of each augmenting search.
  std::vector<double> row_pot(n + 1, 0.0);
  std::vector<double> col_pot(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
  std::vector<std::size_t> way(n + 1, 0);
  std::vector<double> slack(n + 1);
  std::vector<char> used(n + 1);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(slack.begin(), slack.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t r0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(r0 - 1, j - 1) - row_pot[r0] - col_pot[j];
        if (cur < slack[j]) {
          slack[j] = cur;
          way[j] = col0;
        }
        if (slack[j] < delta) {
          delta = slack[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          row_pot[match[j]] += delta;
          col_pot[j] -= delta;
        } else {
          slack[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  Relabeling r;
  r.perm.resize(n);
  for (std::size_t j = 1; j <= n; ++j) r.perm[j - 1] = static_cast<Label>(match[j] - 1);
  return r;
}

/// Sum of C(perm[v], v) over cyber nodes v.
inline double assignment_cost(const CostMatrix& c, const Relabeling& r) {
  if (c.rows() != c.cols() || r.perm.size() != c.cols()) throw InputError("relabeling does not fit the cost matrix");
  double total = 0.0;
  for (std::size_t v = 0; v < r.perm.size(); ++v) total += c(r.perm[v], v);
  return total;
}

/// Same graph with node v renamed to perm[v].
inline SimpleGraph relabel(const SimpleGraph& g, const Relabeling& r) {
  if (r.perm.size() != g.node_count() || !r.is_bijection()) {
    throw InputError("relabeling is not a permutation of the graph's " + std::to_string(g.node_count()) + " labels");
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back(make_edge(r.perm[e.u], r.perm[e.v]));
  return SimpleGraph(g.node_count(), std::move(edges));
}

}  // namespace cybergraph
