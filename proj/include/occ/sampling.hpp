#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "occ/common.hpp"
#include "occ/rational.hpp"

namespace occ {

// Subsample roles. A vertex of S may belong to any subset of the four.
enum Subsample : unsigned {
  kPreClustering = 1u << 0,  // S_p, the centers
  kDistance = 1u << 1,       // S_d
  kCounting = 1u << 2,       // S_b
  kRounding = 1u << 3,       // S_r
};

struct SubsampleBundle {
  Dist epsilon{1, 2};
  std::uint64_t seed = 0;
  std::size_t num_vertices = 0;
  VertexSet sample;         // S
  VertexSet pre_clustering; // S_p
  VertexSet distance;       // S_d
  VertexSet counting;       // S_b
  VertexSet rounding;       // S_r

  friend bool operator==(const SubsampleBundle&,
                         const SubsampleBundle&) = default;
};

inline void check_epsilon(const Dist& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) {
    throw ParameterError("epsilon must lie strictly between 0 and 1, got " +
                         to_string(epsilon));
  }
}

namespace detail {

// floor(p * 2^64) for p in [0, 1); a uniform 64-bit draw x is accepted iff
// x < threshold, which happens with probability threshold / 2^64.
inline std::uint64_t probability_threshold(const BigRational& p) {
  if (p <= 0) return 0;
  BigInt scaled = (numerator(p) << 64) / denominator(p);
  if (scaled >= (BigInt(1) << 64)) return UINT64_MAX;
  return scaled.convert_to<std::uint64_t>();
}

constexpr std::uint64_t kSampleStream = 0x53414d504c45ULL;  // "SAMPLE"
constexpr std::uint64_t kSplitStream = 0x53504c4954ULL;     // "SPLIT"

}  // namespace detail

// Membership probabilities of the 16 subsample patterns for a vertex of S,
// indexed by Subsample bitmask. With x = epsilon / 2 the marginal of each
// subsample given v in S is x. Unconditionally each subsample has rate
// epsilon^2 / 2 and the four memberships are independent.
struct PatternDistribution {
  Dist epsilon;
  std::array<BigRational, 16> prob;

  const BigRational& operator[](unsigned mask) const { return prob.at(mask); }
};

inline PatternDistribution pattern_probs(const Dist& epsilon) {
  check_epsilon(epsilon);
  const BigRational e = to_big(epsilon);
  const BigRational x = e / 2;
  const BigRational e2 = e * e, e3 = e2 * e;
  const BigRational x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  const BigRational single = x - 3 * e * x2 + 3 * e2 * x3 - e3 * x4;
  const BigRational pair = e * x2 - 2 * e2 * x3 + e3 * x4;
  const BigRational triple = e2 * x3 - e3 * x4;
  const BigRational quad = e3 * x4;
  const BigRational none = 1 - 4 * x + 6 * e * x2 - 4 * e2 * x3 + e3 * x4;

  PatternDistribution out{epsilon, {}};
  BigRational total = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    switch (std::popcount(mask)) {
      case 0: out.prob[mask] = none; break;
      case 1: out.prob[mask] = single; break;
      case 2: out.prob[mask] = pair; break;
      case 3: out.prob[mask] = triple; break;
      default: out.prob[mask] = quad; break;
    }
    OCC_EXPECT(out.prob[mask] >= 0 && out.prob[mask] <= 1,
               "pattern probability outside [0,1]");
    total += out.prob[mask];
  }
  OCC_EXPECT(total == 1, "pattern probabilities do not sum to 1");
  return out;
}

// Each vertex joins S independently with probability epsilon. The draw for
// vertex v depends only on (seed, v).
inline VertexSet draw_sample(std::size_t n, const Dist& epsilon,
                             std::uint64_t seed) {
  check_epsilon(epsilon);
  const std::uint64_t threshold = detail::probability_threshold(to_big(epsilon));
  VertexSet s;
  for (VertexId v = 0; v < n; ++v) {
    if (mix64(seed, detail::kSampleStream, v) < threshold) s.push_back(v);
  }
  return s;
}

// Assigns every v in S one of the 16 membership patterns.
inline SubsampleBundle split_subsamples(std::size_t n, VertexSet sample,
                                        const Dist& epsilon,
                                        std::uint64_t seed) {
  const PatternDistribution dist = pattern_probs(epsilon);
  std::array<std::uint64_t, 15> cumulative{};
  BigRational acc = 0;
  for (unsigned mask = 0; mask < 15; ++mask) {
    acc += dist[mask];
    cumulative[mask] = detail::probability_threshold(acc);
  }

  SubsampleBundle b;
  b.epsilon = epsilon;
  b.seed = seed;
  b.num_vertices = n;
  b.sample = normalized(std::move(sample));
  for (VertexId v : b.sample) {
    OCC_EXPECT(v < n, "sample vertex out of range");
    const std::uint64_t draw = mix64(seed, detail::kSplitStream, v);
    unsigned mask = 15;
    for (unsigned m = 0; m < 15; ++m) {
      if (draw < cumulative[m]) {
        mask = m;
        break;
      }
    }
    if (mask & kPreClustering) b.pre_clustering.push_back(v);
    if (mask & kDistance) b.distance.push_back(v);
    if (mask & kCounting) b.counting.push_back(v);
    if (mask & kRounding) b.rounding.push_back(v);
  }
  return b;
}

inline SubsampleBundle make_bundle(std::size_t n, const Dist& epsilon,
                                   std::uint64_t seed) {
  return split_subsamples(n, draw_sample(n, epsilon, seed), epsilon, seed);
}

// Bitmask of the subsamples v belongs to.
inline unsigned pattern_of(const SubsampleBundle& b, VertexId v) {
  unsigned mask = 0;
  if (contains(b.pre_clustering, v)) mask |= kPreClustering;
  if (contains(b.distance, v)) mask |= kDistance;
  if (contains(b.counting, v)) mask |= kCounting;
  if (contains(b.rounding, v)) mask |= kRounding;
  return mask;
}

inline nlohmann::json bundle_to_json(const SubsampleBundle& b) {
  return {{"epsilon", to_string(b.epsilon)}, {"seed", b.seed},
          {"n", b.num_vertices},            {"S", b.sample},
          {"S_p", b.pre_clustering},        {"S_d", b.distance},
          {"S_b", b.counting},              {"S_r", b.rounding}};
}

// Hand-built bundles are accepted as long as the subsamples lie inside S.
inline SubsampleBundle bundle_from_json(const nlohmann::json& j) {
  SubsampleBundle b;
  const auto& eps = j.at("epsilon");
  b.epsilon = eps.is_string() ? parse_rational(eps.get<std::string>())
                              : parse_rational(eps.dump());
  check_epsilon(b.epsilon);
  b.seed = j.value("seed", std::uint64_t{0});
  b.num_vertices = j.at("n").get<std::size_t>();
  auto read = [&](const char* key) {
    VertexSet s = normalized(j.at(key).get<VertexSet>());
    for (VertexId v : s) {
      if (v >= b.num_vertices) {
        throw ParameterError(std::string("bundle: id out of range in ") + key);
      }
    }
    return s;
  };
  b.sample = read("S");
  b.pre_clustering = read("S_p");
  b.distance = read("S_d");
  b.counting = read("S_b");
  b.rounding = read("S_r");
  for (const VertexSet* sub :
       {&b.pre_clustering, &b.distance, &b.counting, &b.rounding}) {
    for (VertexId v : *sub) {
      if (!contains(b.sample, v)) {
        throw ParameterError("bundle: subsample member outside S");
      }
    }
  }
  return b;
}

}  // namespace occ
