#pragma once

#include <vector>

#include "occ/centers.hpp"
#include "occ/clustering.hpp"
#include "occ/metrics.hpp"
#include "occ/pivot.hpp"
#include "occ/sampling.hpp"

namespace occ {

// Online clustering with a sample.
//
// Offline, the estimated metrics are built on (S_d, S_r) and the centers S_p
// are ordered by estimated density; center i owns cluster id i. Each arriving
// vertex v is then placed irrevocably:
//
//   1. v eligible (N_v^+ ∩ S_d non-empty) and some center u has
//      d-tilde(u, v) <= c*r: join the earliest such center's cluster.
//   2. v ineligible: Pivot over the ineligible pool with every positive edge
//      clusterable.
//   3. otherwise: Pivot over the eligible-but-unclaimed pool, where only
//      positive edges with d-tilde < c*r are clusterable.
//
// Pool pivoting is incremental: the newcomer scans earlier pool members in
// arrival order, which matches re-running batch ModifiedPivot on the pool.
//
// If G exposes `reveal(v)`, it is called as v arrives, before any query
// involving v.
template <GraphView G>
class OnlineClusterer {
 public:
  struct Pool {
    std::vector<VertexId> members;  // arrival order
    std::vector<ClusterId> cluster;
    std::vector<char> is_pivot;
  };

  OnlineClusterer(const G& g, const SubsampleBundle& bundle,
                  PivotRule rule = PivotRule::earliest_pivot)
      : g_(&g),
        bundle_(bundle),
        rule_(rule),
        ctx_(MetricContext<G>::estimated(g, bundle)),
        cr_(AlgConstants::cr()),
        clustering_(g.num_vertices()),
        arrived_(g.num_vertices(), 0),
        in_sample_(membership(bundle.sample, g.num_vertices())) {
    OCC_EXPECT(bundle.num_vertices == g.num_vertices(),
               "bundle was drawn for a different vertex count");
    centers_ = order_centers(ctx_, bundle_);
    for (std::size_t i = 0; i < centers_.size(); ++i) clustering_.open_cluster();
  }

  // Processes S in ascending id order.
  void process_sample() {
    for (VertexId v : bundle_.sample) {
      if (!arrived_[v]) arrive(v);
    }
  }

  const Assignment& arrive(VertexId v) {
    OCC_EXPECT(v < g_->num_vertices(), "arrive: vertex out of range");
    OCC_EXPECT(!arrived_[v], "arrive: vertex already arrived");
    OCC_EXPECT(in_sample_[v] || sample_arrived_ == bundle_.sample.size(),
               "arrive: online vertex before the sample was processed");
    if constexpr (requires { g_->reveal(v); }) g_->reveal(v);
    arrived_[v] = 1;
    if (in_sample_[v]) ++sample_arrived_;

    if (ctx_.is_eligible(v)) {
      for (std::size_t i = 0; i < centers_.size(); ++i) {
        if (ctx_.adj_dist(centers_.centers[i], v) <= cr_) {
          clustering_.assign(v, {static_cast<ClusterId>(i),
                                 Phase::preclustered, centers_.centers[i]});
          return clustering_.at(v);
        }
      }
      attach(eligible_, v, Phase::pivot_eligible, [&](VertexId a, VertexId b) {
        return g_->is_positive(a, b) && ctx_.adj_dist(a, b) < cr_;
      });
    } else {
      attach(ineligible_, v, Phase::pivot_ineligible,
             [&](VertexId a, VertexId b) { return g_->is_positive(a, b); });
    }
    return clustering_.at(v);
  }

  bool has_arrived(VertexId v) const { return arrived_.at(v) != 0; }
  const Clustering& clustering() const { return clustering_; }
  const OrderedCenters& centers() const { return centers_; }
  const MetricContext<G>& metric() const { return ctx_; }
  const SubsampleBundle& bundle() const { return bundle_; }
  PivotRule rule() const { return rule_; }
  const Pool& ineligible_pool() const { return ineligible_; }
  const Pool& eligible_pool() const { return eligible_; }

 private:
  template <class Clusterable>
  void attach(Pool& pool, VertexId v, Phase phase, Clusterable&& clusterable) {
    std::optional<ClusterId> target;
    for (std::size_t j = 0; j < pool.members.size(); ++j) {
      if (rule_ == PivotRule::earliest_pivot && !pool.is_pivot[j]) continue;
      if (clusterable(pool.members[j], v)) {
        target = pool.cluster[j];
        break;
      }
    }
    const bool pivot = !target.has_value();
    if (pivot) target = clustering_.open_cluster();
    pool.members.push_back(v);
    pool.cluster.push_back(*target);
    pool.is_pivot.push_back(pivot ? 1 : 0);
    clustering_.assign(v, {*target, phase, std::nullopt});
  }

  const G* g_;
  SubsampleBundle bundle_;
  PivotRule rule_;
  MetricContext<G> ctx_;
  Dist cr_;
  OrderedCenters centers_;
  Clustering clustering_;
  std::vector<char> arrived_;
  std::vector<char> in_sample_;
  std::size_t sample_arrived_ = 0;
  Pool ineligible_;
  Pool eligible_;
};

// Checks that `order` is a permutation of V \ S.
inline void validate_arrival_order(std::size_t n, const SubsampleBundle& b,
                                   std::span<const VertexId> order) {
  std::vector<char> seen = membership(b.sample, n);
  for (VertexId v : order) {
    if (v >= n) throw ParameterError("arrival order: vertex out of range");
    if (seen[v]) {
      throw ParameterError("arrival order: vertex " + std::to_string(v) +
                           " repeated or belongs to the sample");
    }
    seen[v] = 1;
  }
  if (order.size() + b.sample.size() != n) {
    throw ParameterError("arrival order does not cover V \\ S");
  }
}

template <GraphView G>
Clustering run(const G& g, const SubsampleBundle& bundle,
               std::span<const VertexId> order,
               PivotRule rule = PivotRule::earliest_pivot) {
  validate_arrival_order(g.num_vertices(), bundle, order);
  OnlineClusterer<G> engine(g, bundle, rule);
  engine.process_sample();
  for (VertexId v : order) engine.arrive(v);
  return engine.clustering();
}

// V \ S in ascending id order.
inline std::vector<VertexId> online_vertices(const SubsampleBundle& b) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < b.num_vertices; ++v) {
    if (!contains(b.sample, v)) out.push_back(v);
  }
  return out;
}

}  // namespace occ
