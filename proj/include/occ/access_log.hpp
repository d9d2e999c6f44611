#pragma once

#include <vector>

#include "occ/graph.hpp"

namespace occ {

// Graph view that enforces the online revelation model: an edge sign may be
// read only when both endpoints are known, i.e. in the offline sample or
// already arrived. Illegal reads are counted and the first few recorded.
// The underlying answer is still returned so a run can finish and report.
class AccessLoggedGraph {
 public:
  AccessLoggedGraph(const SignedGraph& g, std::span<const VertexId> offline)
      : g_(&g), known_(g.num_vertices(), 0) {
    for (VertexId v : offline) known_.at(v) = 1;
  }

  std::size_t num_vertices() const { return g_->num_vertices(); }

  bool is_positive(VertexId u, VertexId v) const {
    ++reads_;
    if (!known_[u] || !known_[v]) {
      ++illegal_;
      if (violations_.size() < 16) violations_.emplace_back(u, v);
    }
    return g_->is_positive(u, v);
  }

  // Called by the engine when v arrives.
  void reveal(VertexId v) const { known_.at(v) = 1; }

  bool is_known(VertexId v) const { return known_.at(v) != 0; }
  std::size_t reads() const { return reads_; }
  std::size_t illegal_reads() const { return illegal_; }
  const std::vector<Edge>& violations() const { return violations_; }

 private:
  const SignedGraph* g_;
  mutable std::vector<char> known_;
  mutable std::size_t reads_ = 0;
  mutable std::size_t illegal_ = 0;
  mutable std::vector<Edge> violations_;
};

static_assert(GraphView<AccessLoggedGraph>);

}  // namespace occ
