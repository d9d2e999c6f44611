#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "occ/engine.hpp"
#include "occ/eval.hpp"

namespace occ {

inline nlohmann::json run_report_json(const Clustering& c,
                                      const OrderedCenters& centers,
                                      const SubsampleBundle& bundle,
                                      const std::string& order_source) {
  nlohmann::json phase = nlohmann::json::object();
  nlohmann::json center_of = nlohmann::json::object();
  for (VertexId v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_assigned(v)) continue;
    const auto& a = c.at(v);
    phase[std::to_string(v)] = phase_name(a.phase);
    if (a.center) center_of[std::to_string(v)] = *a.center;
  }
  return {{"schema", 1},
          {"clusters", c.clusters()},
          {"phase", phase},
          {"center_of", center_of},
          {"centers_order", centers.centers},
          {"center_density", centers.density},
          {"seed", bundle.seed},
          {"epsilon", to_string(bundle.epsilon)},
          {"order_source", order_source}};
}

// Debug dump of both estimated metrics over all pairs u < v.
template <GraphView G>
std::string metric_dump_csv(const MetricContext<G>& ctx) {
  std::string out = "u,v,dbar_num,dbar_den,dtilde_num,dtilde_den\n";
  for (VertexId u = 0; u < ctx.num_vertices(); ++u) {
    for (VertexId v = u + 1; v < ctx.num_vertices(); ++v) {
      const Dist a = ctx.corr_dist(u, v), b = ctx.adj_dist(u, v);
      out += std::to_string(u) + ',' + std::to_string(v) + ',' +
             std::to_string(a.numerator()) + ',' + std::to_string(a.denominator()) +
             ',' + std::to_string(b.numerator()) + ',' +
             std::to_string(b.denominator()) + '\n';
    }
  }
  return out;
}

}  // namespace occ
