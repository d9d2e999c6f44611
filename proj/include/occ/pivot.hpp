#pragma once

#include <string_view>
#include <vector>

#include "occ/clustering.hpp"
#include "occ/graph.hpp"

namespace occ {

// Which earlier pool members a newcomer may attach to.
enum class PivotRule {
  // Only pivots (vertices that opened a cluster). Every cluster is a pivot
  // plus clusterable neighbors of it; with all positive edges clusterable
  // this is the classic Pivot algorithm.
  earliest_pivot,
  // Any earlier pool member; clusters may chain through non-pivots.
  earliest_member,
};

inline std::string_view pivot_rule_name(PivotRule r) {
  return r == PivotRule::earliest_pivot ? "earliest-pivot" : "earliest-member";
}

inline PivotRule parse_pivot_rule(std::string_view s) {
  if (s == "earliest-pivot") return PivotRule::earliest_pivot;
  if (s == "earliest-member") return PivotRule::earliest_member;
  throw ParameterError("unknown pivot rule: " + std::string(s));
}

// Batch ModifiedPivot over an ordered pool: each vertex joins the cluster of
// the earliest eligible earlier vertex it shares a clusterable edge with,
// otherwise it becomes a pivot and opens a new cluster. Returns a cluster
// index per pool position, numbered in order of creation.
template <class Clusterable>
std::vector<ClusterId> modified_pivot_batch(
    std::span<const VertexId> order, Clusterable&& clusterable,
    PivotRule rule = PivotRule::earliest_pivot) {
  std::vector<ClusterId> label(order.size());
  std::vector<char> is_pivot(order.size(), 0);
  ClusterId next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    bool joined = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (rule == PivotRule::earliest_pivot && !is_pivot[j]) continue;
      if (clusterable(order[j], order[i])) {
        label[i] = label[j];
        joined = true;
        break;
      }
    }
    if (!joined) {
      label[i] = next++;
      is_pivot[i] = 1;
    }
  }
  return label;
}

// Classic Pivot on a permutation of V; returns a cluster id per vertex.
inline std::vector<ClusterId> classic_pivot(
    const SignedGraph& g, std::span<const VertexId> order,
    PivotRule rule = PivotRule::earliest_pivot) {
  OCC_EXPECT(order.size() == g.num_vertices(),
             "classic_pivot: order is not a permutation of V");
  std::vector<char> seen(g.num_vertices(), 0);
  for (VertexId v : order) {
    OCC_EXPECT(v < g.num_vertices() && !seen[v],
               "classic_pivot: order is not a permutation of V");
    seen[v] = 1;
  }
  const auto by_position = modified_pivot_batch(
      order, [&](VertexId a, VertexId b) { return g.is_positive(a, b); }, rule);
  std::vector<ClusterId> labels(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) labels[order[i]] = by_position[i];
  return labels;
}

}  // namespace occ
