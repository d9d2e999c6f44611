#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "occ/clustering.hpp"
#include "occ/graph.hpp"
#include "occ/metrics.hpp"
#include "occ/rational.hpp"

namespace occ {

// An l_p norm exponent, p in [1, inf].
class Norm {
 public:
  explicit Norm(double p) : p_(p) {
    if (!(p >= 1)) throw ParameterError("norm exponent must be >= 1");
  }
  static Norm inf() { return Norm(std::numeric_limits<double>::infinity()); }

  double p() const { return p_; }
  bool is_inf() const { return std::isinf(p_); }
  bool is_integer() const { return !is_inf() && p_ == std::floor(p_); }

  std::string name() const {
    if (is_inf()) return "inf";
    if (is_integer()) return std::to_string(static_cast<long long>(p_));
    nlohmann::json j = p_;
    return j.dump();
  }

  friend bool operator==(const Norm&, const Norm&) = default;

 private:
  double p_;
};

inline Norm parse_norm(const std::string& s) {
  if (s == "inf" || s == "infinity") return Norm::inf();
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("bad norm exponent: " + s);
  }
  if (used != s.size()) throw ParameterError("bad norm exponent: " + s);
  return Norm(p);
}

// Per-vertex disagreement counts. A positive edge disagrees when cut, a
// negative edge when both endpoints share a cluster.
struct DisagreementVector {
  std::vector<std::size_t> y;
  std::size_t edge_cost = 0;  // disagreeing edges, each counted once
};

inline DisagreementVector disagreements(const SignedGraph& g,
                                        std::span<const ClusterId> labels) {
  const std::size_t n = g.num_vertices();
  OCC_EXPECT(labels.size() == n, "disagreements: labels do not cover V");
  std::unordered_map<ClusterId, std::size_t> size;
  for (ClusterId c : labels) ++size[c];
  DisagreementVector out;
  out.y.resize(n);
  std::size_t total = 0;
  for (VertexId u = 0; u < n; ++u) {
    std::size_t positive_inside = 0;
    for (VertexId v : g.positive_neighbors(u)) {
      if (labels[v] == labels[u]) ++positive_inside;
    }
    const std::size_t cut = g.positive_degree(u) - positive_inside;
    const std::size_t negative_inside = size[labels[u]] - 1 - positive_inside;
    out.y[u] = cut + negative_inside;
    total += out.y[u];
  }
  OCC_EXPECT(total % 2 == 0, "disagreement total must be even");
  out.edge_cost = total / 2;
  return out;
}

inline DisagreementVector disagreements(const SignedGraph& g,
                                        const Clustering& c) {
  return disagreements(g, c.labels());
}

// (sum y^p)^(1/p), or max y for p = inf.
inline double lp_cost(std::span<const std::size_t> y, const Norm& p) {
  if (p.is_inf()) {
    std::size_t m = 0;
    for (std::size_t v : y) m = std::max(m, v);
    return static_cast<double>(m);
  }
  if (p.p() == 1) {
    std::size_t s = 0;
    for (std::size_t v : y) s += v;
    return static_cast<double>(s);
  }
  // Scale by the max entry to keep pow() in range.
  double m = 0;
  for (std::size_t v : y) m = std::max(m, static_cast<double>(v));
  if (m == 0) return 0;
  long double acc = 0;
  for (std::size_t v : y) acc += std::pow(static_cast<long double>(v) / m, p.p());
  return static_cast<double>(m * std::pow(acc, 1.0L / p.p()));
}

// sum y^p exactly.
inline BigInt power_sum(std::span<const std::size_t> y, unsigned p) {
  BigInt acc = 0;
  for (std::size_t v : y) acc += boost::multiprecision::pow(BigInt(v), p);
  return acc;
}

struct CostReport {
  std::size_t edge_cost = 0;
  std::vector<std::size_t> y;
  std::vector<std::pair<Norm, double>> norms;

  double linf() const { return lp_cost(y, Norm::inf()); }
  double l1() const { return lp_cost(y, Norm(1)); }
};

inline CostReport cost_report(const SignedGraph& g,
                              std::span<const ClusterId> labels,
                              std::span<const Norm> norms) {
  auto dv = disagreements(g, labels);
  CostReport r{dv.edge_cost, std::move(dv.y), {}};
  for (const Norm& p : norms) r.norms.emplace_back(p, lp_cost(r.y, p));
  return r;
}

inline nlohmann::json to_json(const CostReport& r) {
  nlohmann::json norms = nlohmann::json::object();
  for (const auto& [p, v] : r.norms) norms[p.name()] = v;
  return {{"edge_cost", r.edge_cost}, {"y", r.y}, {"norms", norms}};
}

// ---------------------------------------------------------------------------
// Exhaustive optimum over all set partitions (restricted growth strings).

inline constexpr std::size_t kBruteForceLimit = 12;

struct OptResult {
  double cost = 0;                  // l_p norm of the optimal y
  std::vector<ClusterId> labels;    // optimal partition (first found)
  std::vector<std::size_t> y;
};

namespace detail {

class PartitionSearch {
 public:
  PartitionSearch(const SignedGraph& g, const Norm& p,
                  std::span<const Edge> must_join)
      : n_(g.num_vertices()), p_(p), pos_(n_ * n_, 0), y_(n_, 0),
        label_(n_, 0), join_(must_join.begin(), must_join.end()) {
    for (VertexId u = 0; u < n_; ++u) {
      for (VertexId v : g.positive_neighbors(u)) pos_[u * n_ + v] = 1;
    }
  }

  OptResult solve() {
    if (n_ == 0) return OptResult{};
    best_ = std::numeric_limits<long double>::infinity();
    descend(0, 0);
    OptResult out;
    out.labels = best_labels_;
    out.y = best_y_;
    out.cost = lp_cost(out.y, p_);
    return out;
  }

 private:
  long double objective() const {
    if (p_.is_inf()) {
      return static_cast<long double>(*std::max_element(y_.begin(), y_.end()));
    }
    long double acc = 0;
    for (std::size_t v : y_) {
      if (p_.is_integer()) {
        long double t = 1;
        for (int k = 0; k < static_cast<int>(p_.p()); ++k) t *= v;
        acc += t;
      } else {
        acc += std::pow(static_cast<long double>(v), p_.p());
      }
    }
    return acc;
  }

  bool violates_join(std::size_t assigned) const {
    for (auto [a, b] : join_) {
      if (a < assigned && b < assigned && label_[a] != label_[b]) return true;
    }
    return false;
  }

  void descend(std::size_t i, ClusterId used) {
    if (i > 0 && (violates_join(i) || objective() >= best_)) return;
    if (i == n_) {
      best_ = objective();
      best_labels_ = label_;
      best_y_ = y_;
      return;
    }
    const ClusterId limit = (i == 0) ? 0 : used;
    for (ClusterId b = 0; b <= limit; ++b) {
      label_[i] = b;
      for (std::size_t j = 0; j < i; ++j) {
        const bool same = label_[j] == b;
        if (pos_[i * n_ + j] != same) { ++y_[i]; ++y_[j]; }
      }
      descend(i + 1, std::max<ClusterId>(used, b + 1));
      for (std::size_t j = 0; j < i; ++j) {
        const bool same = label_[j] == b;
        if (pos_[i * n_ + j] != same) { --y_[i]; --y_[j]; }
      }
    }
  }

  std::size_t n_;
  Norm p_;
  std::vector<char> pos_;
  std::vector<std::size_t> y_;
  std::vector<ClusterId> label_;
  std::vector<Edge> join_;
  long double best_ = 0;
  std::vector<ClusterId> best_labels_;
  std::vector<std::size_t> best_y_;
};

}  // namespace detail

// Minimum l_p cost over all partitions of V; n <= 12. Optional `must_join`
// pairs restrict the search to partitions keeping each pair together.
inline OptResult brute_force_opt(const SignedGraph& g, const Norm& p,
                                 std::span<const Edge> must_join = {}) {
  if (g.num_vertices() > kBruteForceLimit) {
    throw ParameterError("brute force optimum supports at most " +
                         std::to_string(kBruteForceLimit) + " vertices, got " +
                         std::to_string(g.num_vertices()));
  }
  for (auto [a, b] : must_join) {
    if (a >= g.num_vertices() || b >= g.num_vertices()) {
      throw ParameterError("must_join vertex out of range");
    }
  }
  return detail::PartitionSearch(g, p, must_join).solve();
}

// ---------------------------------------------------------------------------
// Fractional costs D(u) = sum_{v in N_u^+} x_uv + sum_{v in N_u^-} (1 - x_uv)

enum class MetricKind {
  correlation,                  // d   (U = V)
  adjusted,                     // d*  (U = W = V)
  estimated,                    // d-bar (U = S_d)
  estimated_adjusted,           // d-tilde (U = S_d, W = S_r)
  estimated_adjusted_eligible,  // d-tilde with v restricted to V_0
};

inline bool needs_bundle(MetricKind k) {
  return k != MetricKind::correlation && k != MetricKind::adjusted;
}

template <GraphView G>
BigRational fractional_cost(const MetricContext<G>& ctx, VertexId u,
                            bool adjusted, bool eligible_only) {
  const G& g = ctx.graph();
  BigRational sum = 0;
  for (VertexId v = 0; v < ctx.num_vertices(); ++v) {
    if (v == u) continue;
    if (eligible_only && !ctx.is_eligible(v)) continue;
    const Dist x = adjusted ? ctx.adj_dist(u, v) : ctx.corr_dist(u, v);
    sum += g.is_positive(u, v) ? to_big(x) : to_big(1 - x);
  }
  return sum;
}

inline std::vector<BigRational> fractional_costs(
    const SignedGraph& g, MetricKind kind,
    const SubsampleBundle* bundle = nullptr) {
  if (needs_bundle(kind) && bundle == nullptr) {
    throw ParameterError("fractional cost: metric requires a subsample bundle");
  }
  auto ctx = needs_bundle(kind)
                 ? MetricContext<SignedGraph>::estimated(g, *bundle)
                 : MetricContext<SignedGraph>::exact(g);
  const bool adjusted = kind == MetricKind::adjusted ||
                        kind == MetricKind::estimated_adjusted ||
                        kind == MetricKind::estimated_adjusted_eligible;
  const bool eligible_only = kind == MetricKind::estimated_adjusted_eligible;
  std::vector<BigRational> out(g.num_vertices());
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    out[u] = fractional_cost(ctx, u, adjusted, eligible_only);
  }
  return out;
}

// sum_u sum_{v in N_u^+} d_uv for the exact correlation metric (each
// positive edge counted from both ends).
inline BigRational positive_fractional_total(const SignedGraph& g) {
  auto ctx = MetricContext<SignedGraph>::exact(g);
  BigRational sum = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId v : g.positive_neighbors(u)) sum += to_big(ctx.corr_dist(u, v));
  }
  return sum;
}

}  // namespace occ
