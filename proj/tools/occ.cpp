// occ: command-line front end for online correlation clustering with a sample.
//
// Exit codes: 0 success, 2 usage or parameter error, 3 invariant violation,
// 1 anything else.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "occ/occ.hpp"

namespace {

using nlohmann::json;
using namespace occ;

struct InstanceFlags {
  std::string graph;
  std::string meta;
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 1;
  double flip = 0;
  double density = 0.5;
  std::size_t gadget_size = 0;
  std::uint64_t seed = 0;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f, bool with_graph,
                        const std::string& seed_flag) {
  if (with_graph) {
    cmd->add_option("--graph", f.graph, "graph file (edge-list format)");
    cmd->add_option("--meta", f.meta,
                    "instance sidecar JSON (default: graph path with .json)");
  }
  cmd->add_option("--kind", f.kind,
                  "planted | two-cliques | clique | gadget-ro | gadget-aos | random");
  cmd->add_option("--n", f.n, "vertex count");
  cmd->add_option("--k", f.k, "planted cluster count");
  cmd->add_option("--flip", f.flip, "planted sign-flip probability");
  cmd->add_option("--density", f.density, "random: positive-edge probability");
  cmd->add_option("--gadget-size", f.gadget_size, "gadget mix: vertices per gadget");
  cmd->add_option(seed_flag, f.seed, "instance generator seed");
}

Instance generate(const InstanceFlags& f, std::uint64_t seed) {
  if (f.kind.empty()) throw ParameterError("--kind is required");
  if (f.kind == "planted") return gen_planted(f.n, f.k, f.flip, seed);
  if (f.kind == "two-cliques") return gen_two_cliques(f.n);
  if (f.kind == "clique") return gen_clique(f.n);
  if (f.kind == "random") return gen_random_sign(f.n, f.density, seed);
  if (f.kind == "gadget-ro" || f.kind == "gadget-aos") {
    if (f.gadget_size == 0) throw ParameterError("--gadget-size is required");
    return gen_gadget_mix(f.n, f.gadget_size, seed,
                          f.kind == "gadget-ro" ? GadgetMixKind::ro : GadgetMixKind::aos);
  }
  throw ParameterError("unknown instance kind: " + f.kind);
}

std::string sidecar_path(const std::string& graph_path) {
  return std::filesystem::path(graph_path).replace_extension(".json").string();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

Instance load_instance(const InstanceFlags& f) {
  if (f.graph.empty()) return generate(f, f.seed);
  SignedGraph g = read_graph_file(f.graph);
  const std::string meta = f.meta.empty() ? sidecar_path(f.graph) : f.meta;
  if (std::filesystem::exists(meta)) {
    return instance_from_sidecar(std::move(g), read_json_file(meta));
  }
  if (!f.meta.empty()) throw ParameterError("cannot open " + f.meta);
  Instance inst;
  inst.kind = "file";
  inst.graph = std::move(g);
  return inst;
}

std::vector<Norm> parse_norms(const std::string& list) {
  std::vector<Norm> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(parse_norm(item));
  }
  if (out.empty()) throw ParameterError("empty norm list");
  return out;
}

std::vector<Dist> parse_epsilons(const std::string& list) {
  std::vector<Dist> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    out.push_back(parse_rational(item));
    check_epsilon(out.back());
  }
  if (out.empty()) throw ParameterError("empty epsilon list");
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<VertexId> read_order_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open order file " + path);
  std::vector<VertexId> order;
  for (long long v; in >> v;) {
    if (v < 0) throw ParameterError("negative vertex id in order file");
    order.push_back(static_cast<VertexId>(v));
  }
  if (!in.eof()) throw ParameterError("malformed order file " + path);
  return order;
}

std::vector<VertexId> make_order(const std::string& source, const Instance& inst,
                                 const SubsampleBundle& b, std::uint64_t order_seed,
                                 const std::string& order_file) {
  const std::size_t n = inst.graph.num_vertices();
  if (source == "ascending") return ascending_order(n, b.sample);
  if (source == "random") return random_order(n, b.sample, order_seed);
  if (source == "adversarial") return adversarial_order(inst, b.sample);
  if (source == "file") {
    if (order_file.empty()) throw ParameterError("--order file needs --order-file");
    // Vertices of S in the file are skipped: S is processed first anyway.
    std::vector<VertexId> order;
    for (VertexId v : read_order_file(order_file)) {
      if (!contains(b.sample, v)) order.push_back(v);
    }
    return order;
  }
  throw ParameterError("unknown order source: " + source);
}

// ---------------------------------------------------------------------------

int cmd_gen(const InstanceFlags& f, const std::string& out) {
  Instance inst = generate(f, f.seed);
  if (out.empty()) {
    std::cout << serialize_graph(inst.graph);
    return 0;
  }
  write_graph_file(out, inst.graph);
  write_text(sidecar_path(out), sidecar_json(inst).dump(2) + "\n");
  return 0;
}

struct RunFlags {
  std::string epsilon;
  std::uint64_t seed = 0;
  std::string order = "ascending";
  std::uint64_t order_seed = 0;
  std::string order_file;
  std::string norms = "1,2,inf";
  std::string pivot_rule = "earliest-pivot";
  std::string out;
  std::string csv;
  std::string bundle_in;
  std::string bundle_out;
};

int cmd_run(const InstanceFlags& f, const RunFlags& r) {
  const Instance inst = load_instance(f);
  const std::size_t n = inst.graph.num_vertices();
  SubsampleBundle bundle;
  if (!r.bundle_in.empty()) {
    bundle = bundle_from_json(read_json_file(r.bundle_in));
    if (bundle.num_vertices != n) throw ParameterError("bundle vertex count mismatch");
  } else {
    if (r.epsilon.empty()) throw ParameterError("--epsilon is required");
    bundle = make_bundle(n, parse_rational(r.epsilon), r.seed);
  }
  if (!r.bundle_out.empty()) write_text(r.bundle_out, bundle_to_json(bundle).dump(2) + "\n");
  const auto norms = parse_norms(r.norms);
  const auto order = make_order(r.order, inst, bundle, r.order_seed, r.order_file);
  validate_arrival_order(n, bundle, order);

  OnlineClusterer<SignedGraph> engine(inst.graph, bundle, parse_pivot_rule(r.pivot_rule));
  engine.process_sample();
  for (VertexId v : order) engine.arrive(v);
  const Clustering& c = engine.clustering();
  const auto cost = cost_report(inst.graph, c.labels(), norms);

  json report = run_report_json(c, engine.centers(), bundle, r.order);
  report["order_seed"] = r.order_seed;
  report["pivot_rule"] = pivot_rule_name(engine.rule());
  report["cost"] = to_json(cost);
  std::optional<CostReport> planted;
  if (inst.ground_truth) {
    planted = cost_report(inst.graph, *inst.ground_truth, norms);
    report["reference_cost"] = to_json(*planted);
  }
  write_text(r.out, report.dump(2) + "\n");

  if (!r.csv.empty()) {
    const bool fresh = !std::filesystem::exists(r.csv);
    std::ofstream csv(r.csv, std::ios::app);
    if (!csv) throw ParameterError("cannot write " + r.csv);
    if (fresh) {
      csv << "epsilon,seed,order,order_seed,n,edge_cost";
      for (const Norm& p : norms) csv << ",l" << p.name();
      csv << ",reference_edge_cost\n";
    }
    csv << to_string(bundle.epsilon) << ',' << bundle.seed << ',' << r.order << ','
        << r.order_seed << ',' << n << ',' << cost.edge_cost;
    for (const auto& [p, v] : cost.norms) csv << ',' << fmt_double(v);
    csv << ',' << (planted ? std::to_string(planted->edge_cost) : "") << '\n';
  }
  return 0;
}

int cmd_oracle(const InstanceFlags& f, const std::string& p, const std::string& out) {
  const Instance inst = load_instance(f);
  const Norm norm = parse_norm(p);
  const OptResult opt = brute_force_opt(inst.graph, norm);
  std::vector<VertexSet> clusters;
  for (VertexId v = 0; v < opt.labels.size(); ++v) {
    if (opt.labels[v] >= clusters.size()) clusters.resize(opt.labels[v] + 1);
    clusters[opt.labels[v]].push_back(v);
  }
  json j = {{"schema", 1},
            {"p", norm.name()},
            {"opt_cost", opt.cost},
            {"opt_clustering", clusters},
            {"y", opt.y}};
  write_text(out, j.dump(2) + "\n");
  return 0;
}

struct SweepFlags {
  std::size_t seeds = 1;
  std::uint64_t seed_start = 0;
  std::string epsilons;
  std::size_t order_seeds = 1;
  std::string order = "random";
  std::uint64_t sample_seed = 0;
  std::string norms = "1,2,inf";
  std::string pivot_rule = "earliest-pivot";
  std::string out;
};

int cmd_sweep(const InstanceFlags& f, const SweepFlags& s) {
  if (!f.graph.empty()) throw ParameterError("sweep generates its instances; use --kind");
  const auto epsilons = parse_epsilons(s.epsilons);
  const auto norms = parse_norms(s.norms);
  const PivotRule rule = parse_pivot_rule(s.pivot_rule);
  if (s.order != "random" && s.order != "ascending" && s.order != "adversarial") {
    throw ParameterError("sweep --order must be random, ascending or adversarial");
  }
  struct Task { std::uint64_t inst_seed; std::size_t eps; std::uint64_t order_seed; };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < s.seeds; ++i) {
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      for (std::uint64_t o = 0; o < s.order_seeds; ++o) {
        tasks.push_back({s.seed_start + i, e, o});
      }
    }
  }

  std::vector<std::string> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        const Task& task = tasks[t];
        const Instance inst = generate(f, task.inst_seed);
        const std::size_t n = inst.graph.num_vertices();
        const auto bundle = make_bundle(n, epsilons[task.eps],
                                        mix64(s.sample_seed, task.inst_seed, task.order_seed));
        const auto order = make_order(s.order, inst, bundle, task.order_seed, "");
        OnlineClusterer<SignedGraph> engine(inst.graph, bundle, rule);
        engine.process_sample();
        for (VertexId v : order) engine.arrive(v);
        const auto cost = cost_report(inst.graph, engine.clustering().labels(), norms);
        std::string row = std::to_string(task.inst_seed) + ',' +
                          to_string(epsilons[task.eps]) + ',' +
                          std::to_string(task.order_seed) + ',' + std::to_string(n) + ',' +
                          std::to_string(bundle.sample.size()) + ',' +
                          std::to_string(engine.centers().size()) + ',' +
                          std::to_string(cost.edge_cost);
        for (const auto& [p, v] : cost.norms) row += ',' + fmt_double(v);
        if (n <= kBruteForceLimit) {
          row += ',' + std::to_string(static_cast<std::size_t>(
                           brute_force_opt(inst.graph, Norm(1)).cost / 2));
          row += ',' + fmt_double(brute_force_opt(inst.graph, Norm::inf()).cost);
        } else {
          row += ",,";
        }
        if (inst.ground_truth) {
          const auto ref = cost_report(inst.graph, *inst.ground_truth, norms);
          row += ',' + std::to_string(ref.edge_cost) + ',' + fmt_double(ref.linf());
        } else {
          row += ",,";
        }
        rows[t] = std::move(row);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OCC_WORKERS")) {
    workers = std::max<long>(1, std::strtol(env, nullptr, 10));
  }
  workers = std::min(workers, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  // Tasks are enumerated in (instance seed, epsilon, order seed) order, so
  // rows come out sorted regardless of which worker ran them.
  std::string csv = "instance_seed,epsilon,order_seed,n,sample_size,num_centers,edge_cost";
  for (const Norm& p : norms) csv += ",l" + p.name();
  csv += ",opt_edge_cost,opt_linf,reference_edge_cost,reference_linf\n";
  for (const auto& row : rows) csv += row + '\n';
  write_text(s.out, csv);
  return 0;
}

int cmd_check(const InstanceFlags& f, const std::string& epsilon, std::uint64_t seed,
              const std::string& bundle_in, double C, double C_prime,
              const std::string& log_base, const std::string& out) {
  const Instance inst = load_instance(f);
  SubsampleBundle bundle;
  if (!bundle_in.empty()) {
    bundle = bundle_from_json(read_json_file(bundle_in));
  } else {
    if (epsilon.empty()) throw ParameterError("--epsilon is required");
    bundle = make_bundle(inst.graph.num_vertices(), parse_rational(epsilon), seed);
  }
  GoodEventParams params{C, C_prime, std::exp(1.0)};
  if (log_base != "e") params.log_base = std::stod(log_base);
  json j = to_json(check_good_event(inst.graph, bundle, params));
  j["epsilon"] = to_string(bundle.epsilon);
  j["seed"] = bundle.seed;
  j["C"] = C;
  j["C_prime"] = C_prime;
  j["log_base"] = log_base;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_sample(std::size_t n, const std::string& epsilon, std::uint64_t seed,
               const std::string& out) {
  if (epsilon.empty()) throw ParameterError("--epsilon is required");
  write_text(out, bundle_to_json(make_bundle(n, parse_rational(epsilon), seed)).dump(2) + "\n");
  return 0;
}

int cmd_metrics(const InstanceFlags& f, const std::string& epsilon, std::uint64_t seed,
                const std::string& bundle_in, const std::string& out) {
  const Instance inst = load_instance(f);
  SubsampleBundle bundle;
  if (!bundle_in.empty()) {
    bundle = bundle_from_json(read_json_file(bundle_in));
  } else {
    if (epsilon.empty()) throw ParameterError("--epsilon is required");
    bundle = make_bundle(inst.graph.num_vertices(), parse_rational(epsilon), seed);
  }
  auto ctx = MetricContext<SignedGraph>::estimated(inst.graph, bundle);
  write_text(out, metric_dump_csv(ctx));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online correlation clustering with a sample"};
  app.require_subcommand(1);

  InstanceFlags gen_f;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  add_instance_flags(gen, gen_f, false, "--seed");
  gen->add_option("--out", gen_out, "graph path; sidecar JSON written alongside");

  InstanceFlags run_f;
  RunFlags run_r;
  auto* run = app.add_subcommand("run", "run the online algorithm once");
  add_instance_flags(run, run_f, true, "--instance-seed");
  run->add_option("--epsilon", run_r.epsilon, "sample rate, e.g. 0.3 or 3/10");
  run->add_option("--seed", run_r.seed, "sample seed");
  run->add_option("--order", run_r.order, "ascending | random | adversarial | file");
  run->add_option("--order-seed", run_r.order_seed, "seed for --order random");
  run->add_option("--order-file", run_r.order_file, "arrival order, whitespace separated");
  run->add_option("--p", run_r.norms, "comma-separated norms, e.g. 1,2,inf");
  run->add_option("--pivot-rule", run_r.pivot_rule, "earliest-pivot | earliest-member");
  run->add_option("--out", run_r.out, "report path (default stdout)");
  run->add_option("--csv", run_r.csv, "append a summary row to this CSV");
  run->add_option("--bundle", run_r.bundle_in, "use this subsample bundle JSON");
  run->add_option("--bundle-out", run_r.bundle_out, "write the bundle JSON here");

  InstanceFlags oracle_f;
  std::string oracle_p = "inf", oracle_out;
  auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration (n <= 12)");
  add_instance_flags(oracle, oracle_f, true, "--instance-seed");
  oracle->add_option("--p", oracle_p, "norm exponent or inf");
  oracle->add_option("--out", oracle_out, "output path (default stdout)");

  InstanceFlags sweep_f;
  SweepFlags sweep_s;
  auto* sweep = app.add_subcommand("sweep", "grid of runs to CSV");
  add_instance_flags(sweep, sweep_f, false, "--instance-seed");
  sweep->add_option("--seeds", sweep_s.seeds, "number of instance seeds");
  sweep->add_option("--seed-start", sweep_s.seed_start, "first instance seed");
  sweep->add_option("--epsilons", sweep_s.epsilons, "comma-separated sample rates")->required();
  sweep->add_option("--order-seeds", sweep_s.order_seeds, "orders per (instance, epsilon)");
  sweep->add_option("--order", sweep_s.order, "random | ascending | adversarial");
  sweep->add_option("--sample-seed", sweep_s.sample_seed, "base seed for samples");
  sweep->add_option("--p", sweep_s.norms, "comma-separated norms");
  sweep->add_option("--pivot-rule", sweep_s.pivot_rule, "earliest-pivot | earliest-member");
  sweep->add_option("--out", sweep_s.out, "CSV path (default stdout)");

  InstanceFlags check_f;
  std::string check_eps, check_bundle, check_log = "e", check_out;
  std::uint64_t check_seed = 0;
  double check_C = 100, check_Cp = 5;
  auto* check = app.add_subcommand("check", "evaluate the good-event conditions");
  add_instance_flags(check, check_f, true, "--instance-seed");
  check->add_option("--epsilon", check_eps, "sample rate");
  check->add_option("--seed", check_seed, "sample seed");
  check->add_option("--bundle", check_bundle, "use this subsample bundle JSON");
  check->add_option("--C", check_C, "constant C (default 100)");
  check->add_option("--Cprime", check_Cp, "constant C' (default 5)");
  check->add_option("--log-base", check_log, "log base for thresholds: e or a number");
  check->add_option("--out", check_out, "output path (default stdout)");

  std::size_t sample_n = 0;
  std::string sample_eps, sample_out;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "draw and split a sample, print the bundle");
  sample->add_option("--n", sample_n, "vertex count")->required();
  sample->add_option("--epsilon", sample_eps, "sample rate");
  sample->add_option("--seed", sample_seed, "sample seed");
  sample->add_option("--out", sample_out, "output path (default stdout)");

  InstanceFlags metrics_f;
  std::string metrics_eps, metrics_bundle, metrics_out;
  std::uint64_t metrics_seed = 0;
  auto* metrics = app.add_subcommand("metrics", "dump estimated metrics as CSV");
  add_instance_flags(metrics, metrics_f, true, "--instance-seed");
  metrics->add_option("--epsilon", metrics_eps, "sample rate");
  metrics->add_option("--seed", metrics_seed, "sample seed");
  metrics->add_option("--bundle", metrics_bundle, "use this subsample bundle JSON");
  metrics->add_option("--out", metrics_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_gen(gen_f, gen_out);
    if (*run) return cmd_run(run_f, run_r);
    if (*oracle) return cmd_oracle(oracle_f, oracle_p, oracle_out);
    if (*sweep) return cmd_sweep(sweep_f, sweep_s);
    if (*check) {
      return cmd_check(check_f, check_eps, check_seed, check_bundle, check_C, check_Cp,
                       check_log, check_out);
    }
    if (*sample) return cmd_sample(sample_n, sample_eps, sample_seed, sample_out);
    if (*metrics) {
      return cmd_metrics(metrics_f, metrics_eps, metrics_seed, metrics_bundle, metrics_out);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
