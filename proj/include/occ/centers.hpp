#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "occ/metrics.hpp"
#include "occ/sampling.hpp"

namespace occ {

// Centers S_p in decreasing order of estimated density |Ball^{S_b}(u, r)|,
// ties by ascending id. Computed once, before any online arrival.
struct OrderedCenters {
  std::vector<VertexId> centers;
  std::vector<std::size_t> density;  // parallel to `centers`

  std::size_t size() const { return centers.size(); }
  bool empty() const { return centers.empty(); }
};

// { v in restrict : d-tilde(center, v) <= rho }
template <GraphView G>
VertexSet ball(const MetricContext<G>& ctx, VertexId center, const Dist& rho,
               std::span<const VertexId> restrict_to) {
  OCC_EXPECT(rho >= 0 && rho <= 1, "ball: radius outside [0,1]");
  VertexSet out;
  for (VertexId v : restrict_to) {
    if (ctx.adj_dist(center, v) <= rho) out.push_back(v);
  }
  return out;
}

template <GraphView G>
VertexSet ball(const MetricContext<G>& ctx, VertexId center, const Dist& rho) {
  VertexSet all(ctx.num_vertices());
  std::iota(all.begin(), all.end(), VertexId{0});
  return ball(ctx, center, rho, all);
}

template <GraphView G>
std::size_t est_density(const MetricContext<G>& ctx, const SubsampleBundle& b,
                        VertexId u) {
  OCC_EXPECT(contains(b.pre_clustering, u),
             "est_density: vertex is not a center (not in S_p)");
  const Dist r = AlgConstants::r();
  std::size_t count = 0;
  for (VertexId w : b.counting) {
    if (ctx.adj_dist(u, w) <= r) ++count;
  }
  return count;
}

// Sorts (density, id) pairs: density descending, then id ascending.
inline OrderedCenters sort_centers(
    std::vector<std::pair<std::size_t, VertexId>> keyed) {
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& c) {
    if (a.first != c.first) return a.first > c.first;
    return a.second < c.second;
  });
  OrderedCenters out;
  for (auto [density, u] : keyed) {
    out.centers.push_back(u);
    out.density.push_back(density);
  }
  return out;
}

template <GraphView G>
OrderedCenters order_centers(const MetricContext<G>& ctx,
                             const SubsampleBundle& b) {
  std::vector<std::pair<std::size_t, VertexId>> keyed;
  keyed.reserve(b.pre_clustering.size());
  for (VertexId u : b.pre_clustering) {
    keyed.emplace_back(est_density(ctx, b, u), u);
  }
  return sort_centers(std::move(keyed));
}

}  // namespace occ
