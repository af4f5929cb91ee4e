#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cybergraph/assignment.hpp"
#include "cybergraph/dist_fit.hpp"
#include "cybergraph/errors.hpp"
#include "cybergraph/graph.hpp"
#include "cybergraph/metrics.hpp"

// File formats
//
//   edge list     optional "# nodes N" and "# multigraph" header comments,
//                 then one "u v" pair of non-negative integers per line.
//                 Other lines starting with '#' and blank lines are ignored.
//                 Writers emit every pair with u <= v in sorted order.
//   degree counts "degree,count" rows, an optional non-numeric header row.
//   positions     "label,x,y" rows, an optional non-numeric header row;
//                 labels must be exactly 0..n-1.
namespace cybergraph::io {

using json = nlohmann::json;

/// Either a simple graph or a multigraph, as read from a file.
using AnyGraph = std::variant<SimpleGraph, WorkGraph>;

struct EdgeList {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
  bool declared_multigraph = false;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

inline bool parse_uint(const std::string& s, std::size_t& out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(s);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

inline bool parse_real(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace detail

inline EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  std::optional<std::size_t> declared_nodes;
  std::size_t max_label_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream header(line.substr(1));
      std::string key;
      header >> key;
      if (key == "multigraph") {
        out.declared_multigraph = true;
      } else if (key == "nodes") {
        std::string value;
        header >> value;
        std::size_t n = 0;
        if (!detail::parse_uint(value, n)) throw InputError(detail::where(line_no) + "bad node count '" + value + "'");
        declared_nodes = n;
      }
      continue;
    }
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    fields >> a >> b >> extra;
    std::size_t u = 0;
    std::size_t v = 0;
    if (!detail::parse_uint(a, u) || !detail::parse_uint(b, v) || !extra.empty()) {
      throw InputError(detail::where(line_no) + "expected two non-negative integers, got '" + line + "'");
    }
    if (u > 0xffffffffULL || v > 0xffffffffULL) throw InputError(detail::where(line_no) + "label too large");
    out.edges.push_back(make_edge(static_cast<Label>(u), static_cast<Label>(v)));
    max_label_plus_one = std::max({max_label_plus_one, u + 1, v + 1});
  }
  if (declared_nodes) {
    if (*declared_nodes < max_label_plus_one) {
      throw InputError("edge list uses label " + std::to_string(max_label_plus_one - 1) + " but declares " +
                       std::to_string(*declared_nodes) + " nodes");
    }
    out.node_count = *declared_nodes;
  } else {
    out.node_count = max_label_plus_one;
  }
  if (out.node_count == 0) throw InputError("edge list has no nodes");
  return out;
}

/// Simple graph unless the list has a loop, a repeated pair, or a
/// "# multigraph" header.
inline AnyGraph to_graph(const EdgeList& list) {
  auto sorted = list.edges;
  std::sort(sorted.begin(), sorted.end());
  const bool defects = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
                       std::any_of(sorted.begin(), sorted.end(), [](const Edge& e) { return e.is_loop(); });
  if (defects || list.declared_multigraph) {
    WorkGraph g(list.node_count);
    for (const Edge& e : list.edges) g.add_edge(e.u, e.v);
    return g;
  }
  return SimpleGraph(list.node_count, list.edges);
}

inline std::vector<Edge> sorted_edges(std::span<const Edge> edges) {
  std::vector<Edge> out(edges.begin(), edges.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  out << "# nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

/// Adds the "# multigraph" header only when a loop or repeated pair exists.
inline void write_edge_list(std::ostream& out, const WorkGraph& g) {
  if (!g.is_simple()) out << "# multigraph\n";
  out << "# nodes " << g.node_count() << '\n';
  for (const Edge& e : sorted_edges(g.edges())) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(std::ostream& out, const AnyGraph& g) {
  std::visit([&](const auto& graph) { write_edge_list(out, graph); }, g);
}

inline DegreeCountVector parse_degree_counts(std::istream& in) {
  std::vector<std::size_t> counts;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = detail::split_csv(line);
    std::size_t degree = 0;
    std::size_t count = 0;
    const bool numeric = cells.size() == 2 && detail::parse_uint(cells[0], degree) && detail::parse_uint(cells[1], count);
    if (!numeric) {
      if (!seen_data && line_no == 1) continue;  // header row
      throw InputError(detail::where(line_no) + "expected 'degree,count', got '" + line + "'");
    }
    seen_data = true;
    if (degree == 0) {
      if (count != 0) throw InputError(detail::where(line_no) + "degree-0 nodes are not part of a degree count vector");
      continue;
    }
    if (counts.size() < degree) counts.resize(degree, 0);
    counts[degree - 1] += count;
  }
  return DegreeCountVector(std::move(counts));
}

inline PositionMap parse_positions(std::istream& in) {
  std::vector<std::pair<std::size_t, Point>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = detail::split_csv(line);
    std::size_t label = 0;
    Point p;
    const bool ok = cells.size() == 3 && detail::parse_uint(cells[0], label) && detail::parse_real(cells[1], p.x) &&
                    detail::parse_real(cells[2], p.y);
    if (!ok) {
      if (rows.empty() && line_no == 1) continue;
      throw InputError(detail::where(line_no) + "expected 'label,x,y', got '" + line + "'");
    }
    rows.push_back({label, p});
  }
  PositionMap out(rows.size());
  std::vector<char> seen(rows.size(), 0);
  for (const auto& [label, p] : rows) {
    if (label >= rows.size()) throw InputError("unknown label " + std::to_string(label) + " in positions");
    if (seen[label]) throw InputError("label " + std::to_string(label) + " listed twice in positions");
    seen[label] = 1;
    out[label] = p;
  }
  return out;
}

namespace detail {

template <EdgeListGraph G>
std::vector<std::size_t> degrees_of(const G& g) {
  std::vector<std::size_t> d(g.node_count(), 0);
  for (const Edge& e : std::span<const Edge>(g.edges())) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

}  // namespace detail

/// Graphviz; each node carries its degree for size/colour mapping. Repeated
/// pairs stay repeated.
template <EdgeListGraph G>
std::string to_dot(const G& g) {
  std::ostringstream out;
  const auto deg = detail::degrees_of(g);
  out << "graph G {\n";
  for (std::size_t v = 0; v < deg.size(); ++v) out << "  " << v << " [degree=" << deg[v] << "];\n";
  for (const Edge& e : sorted_edges(g.edges())) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

template <EdgeListGraph G>
std::string to_graphml(const G& g) {
  std::ostringstream out;
  const auto deg = detail::degrees_of(g);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < deg.size(); ++v) {
    out << "    <node id=\"n" << v << "\"><data key=\"degree\">" << deg[v] << "</data></node>\n";
  }
  std::size_t id = 0;
  for (const Edge& e : sorted_edges(g.edges())) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << e.u << "\" target=\"n" << e.v << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

/// {"nodes": n, "multigraph": bool, "edges": [[u, v], ...]}
inline json graph_to_json(const AnyGraph& g) {
  json j;
  j["multigraph"] = std::holds_alternative<WorkGraph>(g) && !std::get<WorkGraph>(g).is_simple();
  std::visit(
      [&](const auto& graph) {
        j["nodes"] = graph.node_count();
        json edges = json::array();
        for (const Edge& e : sorted_edges(graph.edges())) edges.push_back({e.u, e.v});
        j["edges"] = std::move(edges);
      },
      g);
  return j;
}

inline EdgeList edge_list_from_json(const json& j) {
  try {
    EdgeList list;
    list.node_count = j.at("nodes").get<std::size_t>();
    list.declared_multigraph = j.value("multigraph", false);
    for (const auto& e : j.at("edges")) {
      const auto u = e.at(0).get<std::size_t>();
      const auto v = e.at(1).get<std::size_t>();
      if (u >= list.node_count || v >= list.node_count) throw InputError("edge label outside node range");
      list.edges.push_back(make_edge(static_cast<Label>(u), static_cast<Label>(v)));
    }
    if (list.node_count == 0) throw InputError("graph has no nodes");
    return list;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
}

/// Reads an edge list, or a JSON graph when the file starts with '{'.
inline AnyGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ws(in);
  if (in.peek() == '{') {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw InputError("'" + path + "': " + e.what());
    }
    return to_graph(edge_list_from_json(j));
  }
  return to_graph(parse_edge_list(in));
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json report_to_json(const MetricsReport& r) {
  return json{
      {"n", r.n},
      {"m", r.m},
      {"rho", r.rho},
      {"graphical", r.graphical},
      {"connected", r.connected},
      {"diameter", r.diameter ? json(*r.diameter) : json(nullptr)},
      {"avg_shortest_path", optional_json(r.avg_shortest_path)},
      {"clustering", optional_json(r.clustering)},
      {"assortativity", optional_json(r.assortativity)},
      {"spectral_gap", optional_json(r.spectral_gap)},
  };
}

inline json spec_to_json(const DistributionSpec& s) {
  return json{{"family", std::string(to_string(s.family))},
              {"alpha", s.alpha},
              {"beta", s.beta ? json(*s.beta) : json(nullptr)}};
}

inline json fit_to_json(const FitResult& f) {
  json j = spec_to_json(f.spec);
  j["mse"] = f.mse;
  j["residual"] = f.residual;
  return j;
}

}  // namespace cybergraph::io
