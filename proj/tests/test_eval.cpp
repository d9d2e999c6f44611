#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "occ/eval.hpp"
#include "occ/instances.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace occ;
using testing_support::graph;

namespace {

std::vector<ClusterId> random_labels(std::size_t n, std::mt19937_64& rng) {
  std::vector<ClusterId> labels(n);
  const auto k = 1 + uniform_below(rng, n);
  for (auto& l : labels) l = static_cast<ClusterId>(uniform_below(rng, k));
  return labels;
}

}  // namespace

TEST(Disagreements, PlantedPartitionIsFree) {
  const auto inst = gen_planted(30, 4, 0.0, 2);
  const auto dv = disagreements(inst.graph, *inst.ground_truth);
  EXPECT_EQ(dv.edge_cost, 0u);
  for (auto y : dv.y) EXPECT_EQ(y, 0u);
}

TEST(Disagreements, TwoCliquesAllTogether) {
  const auto g = gen_two_cliques(6).graph;
  const std::vector<ClusterId> one(6, 0);
  const auto dv = disagreements(g, one);
  EXPECT_EQ(dv.y, oracle::disagreements(oracle::Graph(g), one));
  EXPECT_EQ(dv.y, (std::vector<std::size_t>{2, 3, 3, 2, 3, 3}));
  EXPECT_EQ(lp_cost(dv.y, Norm::inf()), 3.0);
  EXPECT_EQ(dv.edge_cost, 8u);
}

TEST(Disagreements, SingletonsOnClique) {
  const auto g = gen_clique(4).graph;
  const std::vector<ClusterId> singles{0, 1, 2, 3};
  const auto dv = disagreements(g, singles);
  EXPECT_EQ(dv.y, (std::vector<std::size_t>(4, 3)));
  EXPECT_EQ(dv.edge_cost, 6u);
}

TEST(Disagreements, MatchPairScanOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 25;
    const auto g = gen_random_sign(n, 0.4, trial).graph;
    const auto labels = random_labels(n, rng);
    const auto dv = disagreements(g, labels);
    const auto ref = oracle::disagreements(oracle::Graph(g), labels);
    EXPECT_EQ(dv.y, ref);
    EXPECT_EQ(dv.edge_cost, oracle::edge_cost(ref));
    for (auto y : dv.y) EXPECT_LE(y, n - 1);
  }
}

TEST(Disagreements, LabelLengthChecked) {
  const auto g = gen_clique(3).graph;
  EXPECT_THROW(disagreements(g, std::vector<ClusterId>{0, 0}), ContractViolation);
}

TEST(LpCost, Arithmetic) {
  const std::vector<std::size_t> y{2, 1, 1};
  EXPECT_EQ(lp_cost(y, Norm(1)), 4.0);
  EXPECT_EQ(lp_cost(y, Norm::inf()), 2.0);
  EXPECT_NEAR(lp_cost(y, Norm(2)), std::sqrt(6.0), 1e-12);
  EXPECT_EQ(power_sum(y, 2), 6);
  EXPECT_EQ(power_sum(y, 3), 10);
  const std::vector<std::size_t> zero(5, 0);
  for (double p : {1.0, 1.5, 2.0, 7.0}) EXPECT_EQ(lp_cost(zero, Norm(p)), 0.0);
  EXPECT_EQ(lp_cost(zero, Norm::inf()), 0.0);
}

TEST(LpCost, NormValidation) {
  EXPECT_THROW(Norm(0.5), ParameterError);
  EXPECT_THROW(parse_norm("0"), ParameterError);
  EXPECT_THROW(parse_norm("two"), ParameterError);
  EXPECT_THROW(parse_norm("2x"), ParameterError);
  EXPECT_TRUE(parse_norm("inf").is_inf());
  EXPECT_EQ(parse_norm("3").name(), "3");
  EXPECT_EQ(parse_norm("1.5").name(), "1.5");
}

TEST(LpCost, NonIncreasingInP) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> y(1 + uniform_below(rng, 30));
    for (auto& v : y) v = uniform_below(rng, 50);
    double prev = lp_cost(y, Norm(1));
    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0}) {
      const double cur = lp_cost(y, Norm(p));
      EXPECT_LE(cur, prev * (1 + 1e-12));
      prev = cur;
    }
    EXPECT_LE(lp_cost(y, Norm::inf()), prev * (1 + 1e-12));
  }
}

TEST(BruteForce, Examples) {
  const auto clique = gen_clique(5).graph;
  for (const Norm p : {Norm(1), Norm(2), Norm::inf()}) {
    const auto opt = brute_force_opt(clique, p);
    EXPECT_EQ(opt.cost, 0.0);
    EXPECT_EQ(opt.labels, std::vector<ClusterId>(5, 0));
  }
  EXPECT_EQ(brute_force_opt(gen_two_cliques(6).graph, Norm::inf()).cost, 1.0);
  const auto bad = graph(3, {{0, 1}, {0, 2}});
  const auto opt = brute_force_opt(bad, Norm(1));
  EXPECT_EQ(opt.cost, 2.0);  // one disagreeing edge, counted at both ends
  EXPECT_EQ(disagreements(bad, opt.labels).edge_cost, 1u);
}

TEST(BruteForce, SizeLimit) {
  EXPECT_THROW(brute_force_opt(gen_clique(13).graph, Norm(1)), ParameterError);
  EXPECT_NO_THROW(brute_force_opt(SignedGraph(0), Norm(1)));
}

TEST(BruteForce, MatchesPartitionOracle) {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto g = gen_random_sign(n, 0.5, 300 + trial).graph;
    const oracle::Graph og(g);
    EXPECT_EQ(brute_force_opt(g, Norm::inf()).cost, static_cast<double>(oracle::opt_linf(og)));
    EXPECT_EQ(brute_force_opt(g, Norm(1)).cost, 2.0 * oracle::opt_edges(og));
    const auto opt2 = brute_force_opt(g, Norm(2));
    EXPECT_EQ(opt2.y, disagreements(g, opt2.labels).y);
  }
}

TEST(BruteForce, FirstFoundTieBreak) {
  // Unique optima: only the labelling convention is pinned down here.
  const auto g = graph(3, {});
  EXPECT_EQ(brute_force_opt(g, Norm(1)).labels, (std::vector<ClusterId>{0, 1, 2}));
  // Path 0-1-2 under l_inf: {012}, {01|2} and {0|12} all cost 1; labels
  // (0,0,0) come first in restricted growth order.
  const auto path = graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(brute_force_opt(path, Norm::inf()).labels, (std::vector<ClusterId>{0, 0, 0}));
  const auto h = graph(3, {{0, 1}});
  EXPECT_EQ(brute_force_opt(h, Norm::inf()).labels, (std::vector<ClusterId>{0, 0, 1}));
}

TEST(BruteForce, LowerBoundsRandomClusterings) {
  std::mt19937_64 rng(12);
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 4 + inst % 6;
    const auto g = gen_random_sign(n, 0.5, 50 + inst).graph;
    for (const Norm p : {Norm(1), Norm(2), Norm::inf()}) {
      const double opt = brute_force_opt(g, p).cost;
      for (int k = 0; k < 1000; ++k) {
        EXPECT_LE(opt, lp_cost(disagreements(g, random_labels(n, rng)).y, p) + 1e-9);
      }
    }
  }
}

TEST(BruteForce, MustJoin) {
  const auto g = gen_two_cliques(6).graph;
  const std::vector<Edge> join{{0, 3}};
  const auto opt = brute_force_opt(g, Norm::inf(), join);
  EXPECT_EQ(opt.labels[0], opt.labels[3]);
  EXPECT_EQ(opt.cost, static_cast<double>(oracle::opt_linf(oracle::Graph(g), {{0, 3}})));
  EXPECT_THROW(brute_force_opt(g, Norm(1), std::vector<Edge>{{0, 9}}), ParameterError);
}

// ---------------------------------------------------------------------------

TEST(FractionalCost, PlantedIsZero) {
  const auto inst = gen_planted(20, 3, 0.0, 1);
  for (const auto& d : fractional_costs(inst.graph, MetricKind::correlation)) EXPECT_EQ(d, 0);
}

TEST(FractionalCost, SmallStar) {
  const auto g = graph(3, {{0, 1}, {0, 2}});
  const auto D = fractional_costs(g, MetricKind::correlation);
  EXPECT_EQ(D[0], BigRational(2, 3));
  EXPECT_EQ(D[1], BigRational(2, 3));
  EXPECT_EQ(D[2], BigRational(2, 3));
}

// Every d-tilde is 1, so only positive edges contribute.
TEST(FractionalCost, EmptyDistanceSampleCountsPositiveEdges) {
  const auto g = gen_random_sign(12, 0.4, 7).graph;
  const auto b = testing_support::bundle(12, {1}, {}, {2}, {3});
  const auto D = fractional_costs(g, MetricKind::estimated_adjusted, &b);
  for (VertexId u = 0; u < 12; ++u) {
    EXPECT_EQ(D[u], BigRational(static_cast<long long>(g.positive_degree(u))));
  }
}

TEST(FractionalCost, EstimatedKindsNeedBundle) {
  const auto g = gen_clique(3).graph;
  EXPECT_THROW(fractional_costs(g, MetricKind::estimated), ParameterError);
}

TEST(FractionalCost, EligibleRestrictionMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + trial % 6;
    const auto g = gen_random_sign(n, 0.5, trial).graph;
    const auto b = testing_support::random_bundle(n, rng);
    const auto D0 = fractional_costs(g, MetricKind::estimated_adjusted_eligible, &b);
    const oracle::Graph og(g);
    const auto Sd = oracle::set_of(b.distance), Sr = oracle::set_of(b.rounding);
    for (VertexId u = 0; u < n; ++u) {
      oracle::Q expect = 0;
      for (VertexId v = 0; v < n; ++v) {
        if (v == u || !oracle::eligible(og, Sd, v)) continue;
        const auto d = oracle::adj_dist(og, Sd, Sr, u, v);
        expect += og.positive(u, v) ? d : 1 - d;
      }
      EXPECT_EQ(D0[u], BigRational(expect.numerator(), expect.denominator()));
    }
  }
}

TEST(FractionalCost, PositiveTotal) {
  const auto g = graph(3, {{0, 1}, {0, 2}});
  EXPECT_EQ(positive_fractional_total(g), BigRational(4, 3));
}

TEST(CostReport, Json) {
  const auto g = gen_two_cliques(4).graph;
  const std::vector<Norm> norms{Norm(1), Norm(2), Norm::inf()};
  const auto r = cost_report(g, std::vector<ClusterId>{0, 0, 1, 1}, norms);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("edge_cost"), 1);
  EXPECT_EQ(j.at("norms").at("1"), 2.0);
  EXPECT_EQ(j.at("norms").at("inf"), 1.0);
  EXPECT_EQ(r.l1(), 2.0 * r.edge_cost);
}
