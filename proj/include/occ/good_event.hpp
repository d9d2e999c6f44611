#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "occ/centers.hpp"
#include "occ/metrics.hpp"
#include "occ/sampling.hpp"

namespace occ {

// Diagnostic evaluation of the seven concentration conditions whose
// conjunction is the "good event" for the subsamples. Each item is checked
// verbatim over every vertex (or pair) meeting its size precondition; an
// item no vertex qualifies for is vacuous.
enum class ItemStatus { holds, violated, vacuous };

inline std::string_view status_name(ItemStatus s) {
  switch (s) {
    case ItemStatus::holds: return "holds";
    case ItemStatus::violated: return "violated";
    case ItemStatus::vacuous: return "vacuous";
  }
  return "?";
}

struct GoodEventItem {
  ItemStatus status = ItemStatus::vacuous;
  double size_threshold = 0;            // precondition threshold on set size
  std::size_t checked = 0;              // vertices / pairs meeting it
  std::vector<std::vector<VertexId>> witnesses;  // first few violators
};

struct GoodEventReport {
  std::array<GoodEventItem, 7> items;

  bool any_violated() const {
    for (const auto& it : items) {
      if (it.status == ItemStatus::violated) return true;
    }
    return false;
  }
};

struct GoodEventParams {
  double C = 100;
  double C_prime = 5;
  // Base of the logarithm in the size thresholds; e by default.
  double log_base = std::exp(1.0);
};

namespace detail {

class ItemTracker {
 public:
  explicit ItemTracker(GoodEventItem& item, double threshold) : item_(item) {
    item_.size_threshold = threshold;
  }
  void qualified() { ++item_.checked; }
  void violated(std::vector<VertexId> witness) {
    item_.status = ItemStatus::violated;
    if (item_.witnesses.size() < 8) item_.witnesses.push_back(std::move(witness));
  }
  void finish() {
    if (item_.status != ItemStatus::violated) {
      item_.status = item_.checked > 0 ? ItemStatus::holds : ItemStatus::vacuous;
    }
  }

 private:
  GoodEventItem& item_;
};

// count < (eps^2 / 4) * total, exactly.
inline bool below_quarter_eps2(std::size_t count, std::size_t total,
                               const Dist& eps) {
  const BigInt num = eps.numerator(), den = eps.denominator();
  return BigInt(4) * count * den * den < num * num * total;
}

// count <= (eps^2 / 4) * total, exactly.
inline bool at_most_quarter_eps2(std::size_t count, std::size_t total,
                                 const Dist& eps) {
  const BigInt num = eps.numerator(), den = eps.denominator();
  return BigInt(4) * count * den * den <= num * num * total;
}

}  // namespace detail

inline GoodEventReport check_good_event(const SignedGraph& g,
                                        const SubsampleBundle& b,
                                        const GoodEventParams& params = {}) {
  if (!(params.C > 0) || !(params.C_prime > 0)) {
    throw ParameterError("good event: C and C' must be positive");
  }
  if (!(params.log_base > 1)) throw ParameterError("good event: log base must exceed 1");
  const std::size_t n = g.num_vertices();
  const Dist& eps = b.epsilon;
  const double e = to_double(eps);
  const double log_n = n > 0 ? std::log(static_cast<double>(n)) / std::log(params.log_base) : 0;
  const double big = params.C * log_n / (e * e);
  // log_{1/(1 - eps^2/2)} n
  const double center_log = std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                            -std::log1p(-e * e / 2);
  const double center_size = params.C_prime * center_log;

  GoodEventReport report;
  auto ctx = MetricContext<SignedGraph>::estimated(g, b);
  auto exact = MetricContext<SignedGraph>::exact(g);
  const auto in_p = membership(b.pre_clustering, n);
  const auto in_b = membership(b.counting, n);
  const auto in_r = membership(b.rounding, n);
  const Dist t = AlgConstants::t(), cr = AlgConstants::cr(), r = AlgConstants::r();

  detail::ItemTracker item1(report.items[0], big), item2(report.items[1], center_size),
      item3(report.items[2], center_size), item4(report.items[3], 2 * big),
      item5(report.items[4], big), item6(report.items[5], big),
      item7(report.items[6], big);

  for (VertexId u = 0; u < n; ++u) {
    const std::size_t deg = g.positive_degree(u) + 1;  // |N_u^+|
    if (static_cast<double>(deg) >= big) {
      item1.qualified();
      item6.qualified();
      if (detail::below_quarter_eps2(ctx.support_degree(u), deg, eps)) {
        item1.violated({u});
      }
      std::size_t in_centers = in_p[u] ? 1 : 0;
      for (VertexId v : g.positive_neighbors(u)) in_centers += in_p[v];
      if (detail::below_quarter_eps2(in_centers, deg, eps)) item6.violated({u});
    }

    // Balls of d-tilde around u over all of V.
    std::size_t ball_t = 0, ball_t_p = 0, ball_cr = 0, ball_cr_p = 0;
    std::size_t ball_r = 0, ball_r_b = 0, r1 = 0, r1_r = 0;
    for (VertexId v = 0; v < n; ++v) {
      const Dist d = ctx.adj_dist(u, v);
      if (d <= t) { ++ball_t; ball_t_p += in_p[v]; }
      if (d <= cr) { ++ball_cr; ball_cr_p += in_p[v]; }
      if (d <= r) { ++ball_r; ball_r_b += in_b[v]; }
      if (ctx.in_r1(u, v)) { ++r1; r1_r += in_r[v]; }
    }
    if (static_cast<double>(ball_t) >= center_size) {
      item2.qualified();
      if (ball_t_p == 0) item2.violated({u});
    }
    if (static_cast<double>(ball_cr) >= center_size) {
      item3.qualified();
      if (ball_cr_p == 0) item3.violated({u});
    }
    if (static_cast<double>(ball_r) >= 2 * big) {
      item4.qualified();
      if (detail::at_most_quarter_eps2(ball_r_b, ball_r, eps)) item4.violated({u});
    }
    if (static_cast<double>(r1) >= big) {
      item5.qualified();
      if (detail::below_quarter_eps2(r1_r, r1, eps)) item5.violated({u});
    }
  }

  // Item 7: d-bar tracks d on pairs with a large combined neighborhood.
  const double factor = (1 + params.C) / (3 * e * e) * log_n;
  for (VertexId u = 0; u < n; ++u) {
    const auto nu = g.pos_neighborhood(u);
    for (VertexId v = u + 1; v < n; ++v) {
      const std::size_t upper = nu.size() + g.positive_degree(v) + 1;
      if (static_cast<double>(upper) < big) continue;
      const auto nv = g.pos_neighborhood(v);
      std::size_t inter = 0;
      for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
        if (nu[i] == nv[j]) { ++inter; ++i; ++j; }
        else if (nu[i] < nv[j]) ++i;
        else ++j;
      }
      const std::size_t uni = nu.size() + nv.size() - inter;
      if (static_cast<double>(uni) < big) continue;
      item7.qualified();
      const double dbar = to_double(ctx.corr_dist(u, v));
      const double d = to_double(exact.corr_dist(u, v));
      if (dbar > factor * d || (1 - dbar) > factor * (1 - d)) item7.violated({u, v});
    }
  }

  for (auto* it : {&item1, &item2, &item3, &item4, &item5, &item6, &item7}) it->finish();
  return report;
}

inline nlohmann::json to_json(const GoodEventReport& r) {
  nlohmann::json out = nlohmann::json::object();
  out["schema"] = 1;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const auto& it = r.items[i];
    out["item" + std::to_string(i + 1)] = {
        {"status", status_name(it.status)},
        {"size_threshold", it.size_threshold},
        {"checked", it.checked},
        {"witnesses", it.witnesses}};
  }
  out["good_event"] = !r.any_violated();
  return out;
}

}  // namespace occ
