#pragma once

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "occ/common.hpp"

namespace occ {

enum class Sign { negative, positive };

using Edge = std::pair<VertexId, VertexId>;

// Anything the metric layer and the online engine can query edge signs
// through. `is_positive(u, v)` is only asked for u != v.
template <class G>
concept GraphView = requires(const G& g, VertexId u, VertexId v) {
  { g.num_vertices() } -> std::convertible_to<std::size_t>;
  { g.is_positive(u, v) } -> std::convertible_to<bool>;
};

// Complete signed graph. Positive edges are stored as sorted adjacency
// lists; every other pair is negative. Each vertex carries an implicit
// positive self-loop which shows up in neighborhoods but never as an edge.
class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(std::size_t n) : adj_(n) {}

  // Throws ParameterError on self-loops, out-of-range ids or duplicates.
  static SignedGraph from_edges(std::size_t n, std::span<const Edge> edges) {
    SignedGraph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
      if (u == v) throw ParameterError("self-loop edge");
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& row : g.adj_) {
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
        throw ParameterError("duplicate edge");
      }
    }
    g.num_edges_ = edges.size();
    return g;
  }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_positive_edges() const { return num_edges_; }

  bool is_positive(VertexId u, VertexId v) const {
    return contains(adj_[u], v);
  }

  Sign sign(VertexId u, VertexId v) const {
    OCC_EXPECT(u < num_vertices() && v < num_vertices(),
               "sign: vertex out of range");
    OCC_EXPECT(u != v, "sign: edge signs are defined only for distinct pairs");
    return is_positive(u, v) ? Sign::positive : Sign::negative;
  }

  // Positive neighbors excluding u itself.
  std::span<const VertexId> positive_neighbors(VertexId u) const {
    return adj_[u];
  }

  std::size_t positive_degree(VertexId u) const { return adj_[u].size(); }

  // N_u^+ including the self-loop.
  VertexSet pos_neighborhood(VertexId u) const {
    OCC_EXPECT(u < num_vertices(), "pos_neighborhood: vertex out of range");
    VertexSet out(adj_[u].begin(), adj_[u].end());
    out.insert(std::upper_bound(out.begin(), out.end(), u), u);
    return out;
  }

  // Canonical edge list: u < v, lexicographic.
  std::vector<Edge> positive_edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (VertexId u = 0; u < adj_.size(); ++u) {
      for (VertexId v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  // Subgraph induced on `keep`, relabelled to 0..|keep|-1 in the given order.
  SignedGraph induced(std::span<const VertexId> keep) const {
    std::vector<VertexId> index(num_vertices(), UINT32_MAX);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = i;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (VertexId w : adj_[keep[i]]) {
        if (index[w] != UINT32_MAX && i < index[w]) {
          edges.emplace_back(static_cast<VertexId>(i), index[w]);
        }
      }
    }
    return from_edges(keep.size(), edges);
  }

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t num_edges_ = 0;
};

static_assert(GraphView<SignedGraph>);

namespace detail {

inline bool parse_uint_fields(std::string_view line, std::uint64_t& a,
                              std::uint64_t& b) {
  auto skip_ws = [&](const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
  };
  const char* p = line.data();
  const char* end = line.data() + line.size();
  p = skip_ws(p, end);
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc() || r1.ptr == p) return false;
  const char* q = skip_ws(r1.ptr, end);
  if (q == r1.ptr) return false;
  auto r2 = std::from_chars(q, end, b);
  if (r2.ec != std::errc() || r2.ptr == q) return false;
  return skip_ws(r2.ptr, end) == end;
}

}  // namespace detail

// Edge-list document: "n m" header, then m lines "u v" with u < v.
inline SignedGraph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw ParseError(1, "missing header 'n m'");
  std::uint64_t n = 0, m = 0;
  if (!detail::parse_uint_fields(lines[0], n, m)) {
    throw ParseError(1, "malformed header, expected 'n m'");
  }
  if (n > UINT32_MAX) throw ParseError(1, "vertex count too large");
  std::vector<Edge> edges;
  edges.reserve(std::min<std::uint64_t>(m, lines.size()));
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::size_t line_no = i + 2;
    if (i + 1 >= lines.size()) {
      throw ParseError(line_no, "expected " + std::to_string(m) +
                                    " edges, file ended early");
    }
    std::uint64_t u = 0, v = 0;
    if (!detail::parse_uint_fields(lines[i + 1], u, v)) {
      throw ParseError(line_no, "malformed edge line, expected 'u v'");
    }
    if (u == v) throw ParseError(line_no, "self-loop edge");
    if (u >= n || v >= n) throw ParseError(line_no, "vertex index out of range");
    if (u > v) throw ParseError(line_no, "edge must be written with u < v");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  for (std::size_t i = m + 1; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r") != std::string_view::npos) {
      throw ParseError(i + 1, "unexpected content after last edge");
    }
  }
  // Duplicate detection with line numbers.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      throw ParseError(order[i] + 2, "duplicate edge");
    }
  }
  return SignedGraph::from_edges(n, edges);
}

inline std::string serialize_graph(const SignedGraph& g) {
  const auto edges = g.positive_edges();
  std::string out = std::to_string(g.num_vertices()) + " " +
                    std::to_string(edges.size()) + "\n";
  for (auto [u, v] : edges) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

inline SignedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline void write_graph_file(const std::string& path, const SignedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write graph file: " + path);
  out << serialize_graph(g);
}

}  // namespace occ
