#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "occ/common.hpp"

namespace occ {

// How the online engine placed a vertex.
enum class Phase : std::uint8_t {
  preclustered,      // claimed by a center of S_p
  pivot_ineligible,  // no positive neighbor in S_d; plain Pivot pool
  pivot_eligible,    // eligible but far from every center; restricted Pivot pool
};

inline std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::preclustered: return "preclustered";
    case Phase::pivot_ineligible: return "pivot_ineligible";
    case Phase::pivot_eligible: return "pivot_eligible";
  }
  return "?";
}

struct Assignment {
  ClusterId cluster = 0;
  Phase phase = Phase::pivot_ineligible;
  std::optional<VertexId> center;  // s*(v) when preclustered

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Write-once vertex -> cluster map with per-vertex provenance.
class Clustering {
 public:
  explicit Clustering(std::size_t n = 0) : slots_(n) {}

  std::size_t num_vertices() const { return slots_.size(); }
  std::size_t num_assigned() const { return assigned_; }
  std::size_t num_cluster_ids() const { return next_id_; }

  ClusterId open_cluster() { return next_id_++; }

  void assign(VertexId v, const Assignment& a) {
    OCC_EXPECT(v < slots_.size(), "assign: vertex out of range");
    OCC_EXPECT(!slots_[v], "assign: vertex already assigned (irrevocable)");
    OCC_EXPECT(a.cluster < next_id_, "assign: unknown cluster id");
    slots_[v] = a;
    ++assigned_;
  }

  bool is_assigned(VertexId v) const { return slots_.at(v).has_value(); }

  const Assignment& at(VertexId v) const {
    OCC_EXPECT(is_assigned(v), "clustering: vertex not assigned");
    return *slots_[v];
  }

  // Non-empty clusters in id order, members ascending.
  std::vector<VertexSet> clusters() const {
    std::vector<VertexSet> by_id(next_id_);
    for (VertexId v = 0; v < slots_.size(); ++v) {
      if (slots_[v]) by_id[slots_[v]->cluster].push_back(v);
    }
    std::erase_if(by_id, [](const VertexSet& c) { return c.empty(); });
    return by_id;
  }

  // Cluster id per vertex; every vertex must be assigned.
  std::vector<ClusterId> labels() const {
    OCC_EXPECT(assigned_ == slots_.size(),
               "clustering does not cover every vertex");
    std::vector<ClusterId> out(slots_.size());
    for (VertexId v = 0; v < slots_.size(); ++v) out[v] = slots_[v]->cluster;
    return out;
  }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::optional<Assignment>> slots_;
  std::size_t assigned_ = 0;
  ClusterId next_id_ = 0;
};

// Relabels clusters by order of first appearance, so partitions can be
// compared independently of id choice.
inline std::vector<ClusterId> canonical_labels(std::span<const ClusterId> labels) {
  std::vector<ClusterId> out(labels.size());
  std::vector<std::pair<ClusterId, ClusterId>> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<ClusterId>(seen.size()));
      out[i] = seen.back().second;
    } else {
      out[i] = it->second;
    }
  }
  return out;
}

}  // namespace occ
