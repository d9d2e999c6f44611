#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "occ/common.hpp"
#include "occ/graph.hpp"
#include "occ/rational.hpp"
#include "occ/sampling.hpp"

namespace occ {

// Correlation metric on a support set U and its adjusted version on (U, W).
//
//   d^U(u,v)     = 1 - |N_u^+ ∩ N_v^+ ∩ U| / |(N_u^+ ∪ N_v^+) ∩ U|
//                  (1 when the union misses U, 0 on the diagonal)
//   d^{U,W}(u,v) = 1 if uv is negative and d^U(u,v) > 7/10,
//                  1 if u or v is isolated,
//                  d^U(u,v) otherwise
//
// u is isolated when |R1(u) ∩ W| >= (10/3) |N_u^+ ∩ U|, where
// R1(u) = { v in N_u^- : d^U(u,v) <= 7/10 }.
//
// With U = S_d, W = S_r this is the estimated pair (d-bar, d-tilde); with
// U = W = V it is the exact pair (d, d*).
//
// Per-vertex rows of N_v^+ ∩ U are filled lazily on first use and only
// read edges between v and U. Isolation of u only reads edges between u
// and W. The context is not safe for concurrent use.
template <GraphView G>
class MetricContext {
 public:
  // `isolation_set == nullopt` means W = V.
  MetricContext(const G& g, VertexSet support,
                std::optional<VertexSet> isolation_set)
      : g_(&g),
        n_(g.num_vertices()),
        support_(normalized(std::move(support))),
        words_((support_.size() + 63) / 64),
        rows_(n_),
        row_ready_(n_, 0),
        isolated_(n_, -1) {
    for (VertexId v : support_) OCC_EXPECT(v < n_, "support out of range");
    if (isolation_set) {
      isolation_ = normalized(std::move(*isolation_set));
      for (VertexId v : isolation_) OCC_EXPECT(v < n_, "W out of range");
    } else {
      isolation_.resize(n_);
      for (VertexId v = 0; v < n_; ++v) isolation_[v] = v;
    }
  }

  // d-bar / d-tilde: U = S_d, W = S_r.
  static MetricContext estimated(const G& g, const SubsampleBundle& b) {
    return MetricContext(g, b.distance, b.rounding);
  }

  // d / d*: U = W = V.
  static MetricContext exact(const G& g) {
    VertexSet all(g.num_vertices());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    return MetricContext(g, std::move(all), std::nullopt);
  }

  const G& graph() const { return *g_; }
  std::size_t num_vertices() const { return n_; }
  const VertexSet& support() const { return support_; }
  const VertexSet& isolation_set() const { return isolation_; }

  // |N_u^+ ∩ U|
  std::size_t support_degree(VertexId u) const {
    std::size_t count = 0;
    for (std::uint64_t w : row(u)) count += std::popcount(w);
    return count;
  }

  // N_v^+ ∩ U is non-empty (self-loop included).
  bool is_eligible(VertexId v) const { return support_degree(v) > 0; }

  Dist corr_dist(VertexId u, VertexId v) const {
    if (u == v) return Dist(0);
    const auto& a = row(u);
    const auto& b = row(v);
    std::int64_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < words_; ++i) {
      inter += std::popcount(a[i] & b[i]);
      uni += std::popcount(a[i] | b[i]);
    }
    if (uni == 0) return Dist(1);
    return Dist(uni - inter, uni);
  }

  // Negative neighbor of u that counts toward R1(u).
  bool in_r1(VertexId u, VertexId v) const {
    return u != v && !g_->is_positive(u, v) &&
           corr_dist(u, v) <= AlgConstants::round_threshold();
  }

  // R1(u) over all of V (diagnostic; reads every edge at u).
  VertexSet r1_of(VertexId u) const {
    VertexSet out;
    for (VertexId v = 0; v < n_; ++v) {
      if (in_r1(u, v)) out.push_back(v);
    }
    return out;
  }

  // |R1(u) ∩ W|
  std::size_t r1_in_isolation_set(VertexId u) const {
    std::size_t count = 0;
    for (VertexId w : isolation_) {
      if (in_r1(u, w)) ++count;
    }
    return count;
  }

  bool is_isolated(VertexId u) const {
    if (isolated_[u] < 0) {
      const auto lhs = static_cast<std::int64_t>(r1_in_isolation_set(u));
      const auto deg = static_cast<std::int64_t>(support_degree(u));
      isolated_[u] = AlgConstants::isolate_den * lhs >=
                     AlgConstants::isolate_num * deg;
    }
    return isolated_[u] != 0;
  }

  Dist adj_dist(VertexId u, VertexId v) const {
    if (u == v) return Dist(0);
    if (is_isolated(u) || is_isolated(v)) return Dist(1);
    Dist d = corr_dist(u, v);
    if (d > AlgConstants::round_threshold() && !g_->is_positive(u, v)) {
      return Dist(1);
    }
    return d;
  }

 private:
  const std::vector<std::uint64_t>& row(VertexId v) const {
    OCC_EXPECT(v < n_, "metric: vertex out of range");
    if (!row_ready_[v]) {
      auto& r = rows_[v];
      r.assign(words_, 0);
      for (std::size_t i = 0; i < support_.size(); ++i) {
        const VertexId w = support_[i];
        if (w == v || g_->is_positive(v, w)) r[i / 64] |= 1ULL << (i % 64);
      }
      row_ready_[v] = 1;
    }
    return rows_[v];
  }

  const G* g_;
  std::size_t n_;
  VertexSet support_;
  VertexSet isolation_;
  std::size_t words_;
  mutable std::vector<std::vector<std::uint64_t>> rows_;
  mutable std::vector<char> row_ready_;
  mutable std::vector<signed char> isolated_;
};

// One-shot helpers mirroring the definitions directly.
template <GraphView G>
Dist corr_dist(const G& g, const VertexSet& support, VertexId u, VertexId v) {
  return MetricContext<G>(g, support, std::nullopt).corr_dist(u, v);
}

template <GraphView G>
bool is_eligible(const G& g, const VertexSet& distance_sample, VertexId v) {
  if (contains(distance_sample, v)) return true;
  for (VertexId w : distance_sample) {
    if (g.is_positive(v, w)) return true;
  }
  return false;
}

}  // namespace occ
