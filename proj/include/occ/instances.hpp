#pragma once

#include <cmath>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "occ/common.hpp"
#include "occ/graph.hpp"
#include "occ/sampling.hpp"

namespace occ {

enum class GadgetKind { two_cliques, clique };

// One gadget occupies the contiguous id range [first, first + size).
struct Gadget {
  GadgetKind kind = GadgetKind::clique;
  VertexId first = 0;
  std::size_t size = 0;
  // Endpoints of the single positive edge between the halves (two_cliques).
  VertexId v1 = 0;
  VertexId v2 = 0;

  bool contains(VertexId v) const { return v >= first && v < first + size; }
  friend bool operator==(const Gadget&, const Gadget&) = default;
};

struct Instance {
  std::string kind;  // planted, two_cliques, clique, gadget_mix_ro,
                     // gadget_mix_aos, random_sign
  nlohmann::json params = nlohmann::json::object();
  SignedGraph graph;
  std::optional<std::vector<ClusterId>> ground_truth;
  std::vector<Gadget> gadgets;
  std::size_t flips = 0;  // sign flips applied (planted)
};

namespace detail {

// Bernoulli(p) from one 64-bit draw, p given as a double in [0, 1].
inline bool bernoulli(std::mt19937_64& rng, double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return rng() < threshold;
}

inline void add_clique(std::vector<Edge>& edges, VertexId first, std::size_t size) {
  for (VertexId a = first; a < first + size; ++a) {
    for (VertexId b = a + 1; b < first + size; ++b) edges.emplace_back(a, b);
  }
}

// Two cliques on [first, first+h) and [first+h, first+size) with h = size/2,
// joined by the edge (first, first + h).
inline Gadget add_two_cliques(std::vector<Edge>& edges, VertexId first,
                              std::size_t size) {
  const std::size_t half = size / 2;
  add_clique(edges, first, half);
  add_clique(edges, first + half, size - half);
  Gadget gd{GadgetKind::two_cliques, first, size, first,
            static_cast<VertexId>(first + half)};
  edges.emplace_back(gd.v1, gd.v2);
  return gd;
}

}  // namespace detail

// k near-equal planted clusters (contiguous id blocks, the first n % k
// blocks one larger); each pair's sign is flipped with probability
// flip_prob. Pairs are visited in lexicographic order from one stream.
inline Instance gen_planted(std::size_t n, std::size_t k, double flip_prob,
                            std::uint64_t seed) {
  if (n == 0 || k < 1 || k > n) throw ParameterError("planted: need 1 <= k <= n");
  if (!(flip_prob >= 0 && flip_prob < 1)) {
    throw ParameterError("planted: flip probability must lie in [0, 1)");
  }
  Instance inst;
  inst.kind = "planted";
  inst.params = {{"n", n}, {"k", k}, {"flip", flip_prob}, {"seed", seed}};
  std::vector<ClusterId> truth(n);
  const std::size_t base = n / k, extra = n % k;
  VertexId v = 0;
  for (ClusterId c = 0; c < k; ++c) {
    const std::size_t size = base + (c < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) truth[v++] = c;
  }
  std::mt19937_64 rng(mix64(seed, 0x504c414e54ULL));
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      bool positive = truth[a] == truth[b];
      if (detail::bernoulli(rng, flip_prob)) {
        positive = !positive;
        ++inst.flips;
      }
      if (positive) edges.emplace_back(a, b);
    }
  }
  inst.graph = SignedGraph::from_edges(n, edges);
  inst.ground_truth = std::move(truth);
  return inst;
}

// Two positive cliques of size n/2 joined by a single positive edge.
inline Instance gen_two_cliques(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw ParameterError("two-cliques: n must be even and at least 4, got " +
                         std::to_string(n));
  }
  Instance inst;
  inst.kind = "two_cliques";
  inst.params = {{"n", n}};
  std::vector<Edge> edges;
  inst.gadgets.push_back(detail::add_two_cliques(edges, 0, n));
  inst.graph = SignedGraph::from_edges(n, edges);
  std::vector<ClusterId> truth(n, 0);
  for (VertexId v = n / 2; v < n; ++v) truth[v] = 1;
  inst.ground_truth = std::move(truth);
  return inst;
}

inline Instance gen_clique(std::size_t n) {
  if (n < 1) throw ParameterError("clique: n must be positive");
  Instance inst;
  inst.kind = "clique";
  inst.params = {{"n", n}};
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, n);
  inst.graph = SignedGraph::from_edges(n, edges);
  inst.gadgets.push_back({GadgetKind::clique, 0, n, 0, 0});
  inst.ground_truth = std::vector<ClusterId>(n, 0);
  return inst;
}

enum class GadgetMixKind { ro, aos };

// floor(n / gadget_size) gadgets; the last one absorbs the remainder (its
// halves may then differ by one). Each gadget is two-cliques or a clique
// with probability 1/2; no positive edges between gadgets.
inline Instance gen_gadget_mix(std::size_t n, std::size_t gadget_size,
                               std::uint64_t seed, GadgetMixKind kind) {
  if (gadget_size < 4 || gadget_size % 2 != 0) {
    throw ParameterError("gadget mix: gadget size must be even and >= 4");
  }
  if (n < gadget_size) throw ParameterError("gadget mix: n smaller than one gadget");
  Instance inst;
  inst.kind = kind == GadgetMixKind::ro ? "gadget_mix_ro" : "gadget_mix_aos";
  inst.params = {{"n", n}, {"gadget_size", gadget_size}, {"seed", seed}};
  const std::size_t count = n / gadget_size;
  std::mt19937_64 rng(mix64(seed, 0x474144474554ULL));
  std::vector<Edge> edges;
  std::vector<ClusterId> truth(n);
  ClusterId next_truth = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto first = static_cast<VertexId>(i * gadget_size);
    const std::size_t size = (i + 1 == count) ? n - first : gadget_size;
    Gadget gd;
    if (rng() & 1ULL) {
      gd = detail::add_two_cliques(edges, first, size);
      for (VertexId v = first; v < first + size; ++v) {
        truth[v] = next_truth + (v >= gd.v2 ? 1 : 0);
      }
      next_truth += 2;
    } else {
      detail::add_clique(edges, first, size);
      gd = {GadgetKind::clique, first, size, 0, 0};
      for (VertexId v = first; v < first + size; ++v) truth[v] = next_truth;
      next_truth += 1;
    }
    inst.gadgets.push_back(gd);
  }
  inst.graph = SignedGraph::from_edges(n, edges);
  inst.ground_truth = std::move(truth);
  return inst;
}

// Gadget size n^delta (rounded to an even number >= 4); the random-order
// construction uses delta <= 1/3.
inline std::size_t ro_gadget_size(std::size_t n, double delta) {
  const double s = std::pow(static_cast<double>(n), delta);
  return std::max<std::size_t>(4, 2 * static_cast<std::size_t>(std::llround(s / 2)));
}

// Gadget size log(n) / (4 eps) (rounded to an even number >= 4).
inline std::size_t aos_gadget_size(std::size_t n, double eps) {
  const double s = std::log(static_cast<double>(n)) / (4 * eps);
  return std::max<std::size_t>(4, 2 * static_cast<std::size_t>(std::llround(s / 2)));
}

// Every pair positive independently with probability `density`.
inline Instance gen_random_sign(std::size_t n, double density, std::uint64_t seed) {
  if (n == 0) throw ParameterError("random: n must be positive");
  if (!(density >= 0 && density <= 1)) {
    throw ParameterError("random: density must lie in [0, 1]");
  }
  Instance inst;
  inst.kind = "random_sign";
  inst.params = {{"n", n}, {"density", density}, {"seed", seed}};
  std::mt19937_64 rng(mix64(seed, 0x52414e44ULL));
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (detail::bernoulli(rng, density)) edges.emplace_back(a, b);
    }
  }
  inst.graph = SignedGraph::from_edges(n, edges);
  return inst;
}

// Worst-case arrival order over V \ S. Inside every two-cliques gadget that
// the sample misses, v1 and v2 come first; other gadget vertices follow in
// ascending id. Gadgets are interleaved round-robin. Vertices outside any
// gadget are appended in ascending id.
inline std::vector<VertexId> adversarial_order(const Instance& inst,
                                               std::span<const VertexId> sample) {
  const std::size_t n = inst.graph.num_vertices();
  const auto in_s = membership(sample, n);
  std::vector<char> covered(n, 0);
  std::vector<std::deque<VertexId>> queues;
  for (const Gadget& gd : inst.gadgets) {
    std::deque<VertexId> q;
    bool hit = false;
    for (VertexId v = gd.first; v < gd.first + gd.size; ++v) {
      covered[v] = 1;
      hit = hit || in_s[v];
    }
    const bool lead = gd.kind == GadgetKind::two_cliques && !hit;
    if (lead) {
      q.push_back(gd.v1);
      q.push_back(gd.v2);
    }
    for (VertexId v = gd.first; v < gd.first + gd.size; ++v) {
      if (in_s[v]) continue;
      if (lead && (v == gd.v1 || v == gd.v2)) continue;
      q.push_back(v);
    }
    queues.push_back(std::move(q));
  }
  std::vector<VertexId> order;
  order.reserve(n);
  for (bool progress = true; progress;) {
    progress = false;
    for (auto& q : queues) {
      if (q.empty()) continue;
      order.push_back(q.front());
      q.pop_front();
      progress = true;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!covered[v] && !in_s[v]) order.push_back(v);
  }
  return order;
}

inline std::vector<VertexId> ascending_order(std::size_t n,
                                             std::span<const VertexId> sample) {
  const auto in_s = membership(sample, n);
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v) {
    if (!in_s[v]) order.push_back(v);
  }
  return order;
}

// Uniform permutation of V \ S.
inline std::vector<VertexId> random_order(std::size_t n,
                                          std::span<const VertexId> sample,
                                          std::uint64_t seed) {
  auto order = ascending_order(n, sample);
  std::mt19937_64 rng(mix64(seed, 0x4f52444552ULL));
  shuffle(rng, order);
  return order;
}

inline std::string_view gadget_kind_name(GadgetKind k) {
  return k == GadgetKind::two_cliques ? "two_cliques" : "clique";
}

// Sidecar metadata written next to the graph file.
inline nlohmann::json sidecar_json(const Instance& inst) {
  nlohmann::json j = {{"schema", 1}, {"kind", inst.kind}, {"params", inst.params}};
  if (inst.ground_truth) j["ground_truth"] = *inst.ground_truth;
  if (inst.kind == "planted") j["flips"] = inst.flips;
  if (!inst.gadgets.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Gadget& gd : inst.gadgets) {
      nlohmann::json g = {{"kind", gadget_kind_name(gd.kind)},
                          {"first", gd.first},
                          {"size", gd.size}};
      if (gd.kind == GadgetKind::two_cliques) {
        g["v1"] = gd.v1;
        g["v2"] = gd.v2;
      }
      arr.push_back(std::move(g));
    }
    j["gadgets"] = std::move(arr);
  }
  return j;
}

// Restores metadata for a graph read from disk.
inline Instance instance_from_sidecar(SignedGraph graph, const nlohmann::json& j) {
  Instance inst;
  inst.kind = j.value("kind", std::string("file"));
  inst.params = j.value("params", nlohmann::json::object());
  inst.flips = j.value("flips", std::size_t{0});
  if (j.contains("ground_truth")) {
    auto truth = j.at("ground_truth").get<std::vector<ClusterId>>();
    if (truth.size() != graph.num_vertices()) {
      throw ParameterError("sidecar ground truth has wrong length");
    }
    inst.ground_truth = std::move(truth);
  }
  if (j.contains("gadgets")) {
    for (const auto& g : j.at("gadgets")) {
      Gadget gd;
      gd.kind = g.at("kind").get<std::string>() == "two_cliques"
                    ? GadgetKind::two_cliques
                    : GadgetKind::clique;
      gd.first = g.at("first").get<VertexId>();
      gd.size = g.at("size").get<std::size_t>();
      if (gd.first + gd.size > graph.num_vertices()) {
        throw ParameterError("sidecar gadget outside the graph");
      }
      if (gd.kind == GadgetKind::two_cliques) {
        gd.v1 = g.at("v1").get<VertexId>();
        gd.v2 = g.at("v2").get<VertexId>();
      }
      inst.gadgets.push_back(gd);
    }
  }
  inst.graph = std::move(graph);
  return inst;
}

}  // namespace occ
