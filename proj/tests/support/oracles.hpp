#pragma once

// Reference implementations used only by the tests. They work from plain
// std::set arithmetic and textbook definitions and share no code with the
// library beyond its public types.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "occ/graph.hpp"
#include "occ/sampling.hpp"

namespace oracle {

using Q = boost::rational<long long>;
using VSet = std::set<occ::VertexId>;

struct Graph {
  std::size_t n = 0;
  std::set<std::pair<occ::VertexId, occ::VertexId>> pos;

  explicit Graph(const occ::SignedGraph& g) : n(g.num_vertices()) {
    for (auto [a, b] : g.positive_edges()) pos.insert({std::min(a, b), std::max(a, b)});
  }
  bool positive(occ::VertexId a, occ::VertexId b) const {
    if (a == b) return true;
    return pos.count({std::min(a, b), std::max(a, b)}) > 0;
  }
  VSet closed_nbhd(occ::VertexId u) const {
    VSet out;
    for (occ::VertexId v = 0; v < n; ++v) {
      if (positive(u, v)) out.insert(v);
    }
    return out;
  }
};

inline VSet set_of(const std::vector<occ::VertexId>& v) { return VSet(v.begin(), v.end()); }

inline VSet intersect(const VSet& a, const VSet& b) {
  VSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

inline VSet unite(const VSet& a, const VSet& b) {
  VSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline Q corr_dist(const Graph& g, const VSet& U, occ::VertexId u, occ::VertexId v) {
  if (u == v) return 0;
  const VSet nu = g.closed_nbhd(u), nv = g.closed_nbhd(v);
  const auto inter = intersect(intersect(nu, nv), U);
  const auto uni = intersect(unite(nu, nv), U);
  if (uni.empty()) return 1;
  return Q(1) - Q(static_cast<long long>(inter.size()), static_cast<long long>(uni.size()));
}

inline bool isolated(const Graph& g, const VSet& U, const VSet& W, occ::VertexId u) {
  std::size_t r1w = 0;
  for (occ::VertexId v : W) {
    if (v != u && !g.positive(u, v) && corr_dist(g, U, u, v) <= Q(7, 10)) ++r1w;
  }
  const std::size_t deg = intersect(g.closed_nbhd(u), U).size();
  // |R1(u) ∩ W| >= (10/3) |N_u^+ ∩ U|
  return Q(static_cast<long long>(r1w)) >= Q(10, 3) * Q(static_cast<long long>(deg));
}

inline Q adj_dist(const Graph& g, const VSet& U, const VSet& W, occ::VertexId u,
                  occ::VertexId v) {
  if (u == v) return 0;
  if (isolated(g, U, W, u) || isolated(g, U, W, v)) return 1;
  const Q d = corr_dist(g, U, u, v);
  if (!g.positive(u, v) && d > Q(7, 10)) return 1;
  return d;
}

inline bool eligible(const Graph& g, const VSet& Sd, occ::VertexId v) {
  return !intersect(g.closed_nbhd(v), Sd).empty();
}

// Disagreement counts by scanning every unordered pair.
inline std::vector<std::size_t> disagreements(const Graph& g,
                                              const std::vector<occ::ClusterId>& label) {
  std::vector<std::size_t> y(g.n, 0);
  for (occ::VertexId a = 0; a < g.n; ++a) {
    for (occ::VertexId b = a + 1; b < g.n; ++b) {
      const bool same = label[a] == label[b];
      if (g.positive(a, b) != same) { ++y[a]; ++y[b]; }
    }
  }
  return y;
}

inline std::size_t edge_cost(const std::vector<std::size_t>& y) {
  return std::accumulate(y.begin(), y.end(), std::size_t{0}) / 2;
}

// Calls f(labels) for every set partition of {0..n-1}, built block by block.
inline void for_each_partition(std::size_t n,
                               const std::function<void(const std::vector<occ::ClusterId>&)>& f) {
  std::vector<std::vector<occ::VertexId>> blocks;
  std::function<void(occ::VertexId)> rec = [&](occ::VertexId v) {
    if (v == n) {
      std::vector<occ::ClusterId> label(n);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto x : blocks[b]) label[x] = static_cast<occ::ClusterId>(b);
      }
      f(label);
      return;
    }
    for (auto& blk : blocks) {
      blk.push_back(v);
      rec(v + 1);
      blk.pop_back();
    }
    blocks.push_back({v});
    rec(v + 1);
    blocks.pop_back();
  };
  rec(0);
}

// Minimum over all partitions of max_u y(u), optionally keeping a pair together.
inline std::size_t opt_linf(const Graph& g,
                            std::optional<std::pair<occ::VertexId, occ::VertexId>> join = {}) {
  std::size_t best = SIZE_MAX;
  for_each_partition(g.n, [&](const std::vector<occ::ClusterId>& label) {
    if (join && label[join->first] != label[join->second]) return;
    const auto y = disagreements(g, label);
    best = std::min(best, *std::max_element(y.begin(), y.end()));
  });
  return best;
}

inline std::size_t opt_edges(const Graph& g) {
  std::size_t best = SIZE_MAX;
  for_each_partition(g.n, [&](const std::vector<occ::ClusterId>& label) {
    best = std::min(best, edge_cost(disagreements(g, label)));
  });
  return best;
}

// Textbook Pivot: the first unclustered vertex in the order takes all of its
// unclustered positive neighbours.
inline std::vector<VSet> pivot(const Graph& g, const std::vector<occ::VertexId>& order) {
  std::vector<VSet> clusters;
  VSet done;
  for (occ::VertexId p : order) {
    if (done.count(p)) continue;
    VSet c{p};
    for (occ::VertexId v : order) {
      if (!done.count(v) && v != p && g.positive(p, v)) c.insert(v);
    }
    done.insert(c.begin(), c.end());
    clusters.push_back(c);
  }
  return clusters;
}

// Partition of `vertices` induced by labels, as a set of sets.
inline std::set<VSet> partition_of(const std::vector<occ::ClusterId>& label,
                                   const std::vector<occ::VertexId>& vertices) {
  std::map<occ::ClusterId, VSet> by;
  for (auto v : vertices) by[label[v]].insert(v);
  std::set<VSet> out;
  for (auto& [k, s] : by) out.insert(s);
  return out;
}

// Full online algorithm on a fixed order, recomputed from the definitions:
// centers sorted by density, preclustering to the earliest center within c*r,
// then pivot pools rebuilt from scratch (earliest pivot wins).
struct Outcome {
  std::vector<long long> label;  // center index for preclustered vertices,
                                 // otherwise 1000000 + pool * 10000 + pivot id
  std::vector<occ::VertexId> center_order;
};

inline Outcome online(const Graph& g, const occ::SubsampleBundle& b,
                      const std::vector<occ::VertexId>& arrivals) {
  const VSet Sd = set_of(b.distance), Sr = set_of(b.rounding), Sb = set_of(b.counting);
  const Q r(2401, 54000), cr(49, 200);
  std::vector<std::pair<long long, occ::VertexId>> keyed;
  for (auto u : b.pre_clustering) {
    long long dens = 0;
    for (auto w : Sb) dens += adj_dist(g, Sd, Sr, u, w) <= r;
    keyed.push_back({-dens, u});
  }
  std::sort(keyed.begin(), keyed.end());
  Outcome out;
  for (auto [d, u] : keyed) out.center_order.push_back(u);

  std::vector<occ::VertexId> seq = b.sample;
  seq.insert(seq.end(), arrivals.begin(), arrivals.end());
  out.label.assign(g.n, -1);
  std::vector<occ::VertexId> pool[2];
  for (auto v : seq) {
    if (eligible(g, Sd, v)) {
      bool done = false;
      for (std::size_t i = 0; i < out.center_order.size() && !done; ++i) {
        if (adj_dist(g, Sd, Sr, out.center_order[i], v) <= cr) {
          out.label[v] = static_cast<long long>(i);
          done = true;
        }
      }
      if (done) continue;
      pool[1].push_back(v);
    } else {
      pool[0].push_back(v);
    }
  }
  for (int p = 0; p < 2; ++p) {
    VSet left(pool[p].begin(), pool[p].end());
    for (auto piv : pool[p]) {
      if (!left.count(piv)) continue;
      left.erase(piv);
      out.label[piv] = 1000000 + p * 10000 + piv;
      for (auto v : pool[p]) {
        if (!left.count(v) || !g.positive(piv, v)) continue;
        if (p == 1 && !(adj_dist(g, Sd, Sr, piv, v) < cr)) continue;
        left.erase(v);
        out.label[v] = 1000000 + p * 10000 + piv;
      }
    }
  }
  return out;
}

}  // namespace oracle
