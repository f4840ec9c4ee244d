// Acceptance checks. Run with --criterion N for one of them, or with no
// arguments for all. Prints one PASS/FAIL line per criterion and exits
// nonzero if any check fails.

#include "lfb/analysis.hpp"
#include "lfb/centrality.hpp"
#include "lfb/diffusion.hpp"
#include "lfb/epidemic.hpp"
#include "lfb/generators.hpp"
#include "lfb/graph_io.hpp"
#include "lfb/intervention.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace lfb;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// One single-source instance of the solver corpus shared by criteria 1 and 3.
struct Instance {
  Graph graph;
  NodeId source;
  double lambda;
};

// Unit weights, so that vol(G) = 2|E| as in the locality bound.
std::vector<Instance> solver_corpus(bool weighted = false) {
  std::vector<Instance> out;
  Rng rng(weighted ? 20240602 : 20240601);
  const double lambdas[] = {1.0, 0.5, 0.1};
  for (int i = 0; i < 210; ++i) {
    const int n = 5 + static_cast<int>(uniform_below(rng, 26));
    const double p = 0.05 + 0.35 * uniform01(rng);
    Graph g = oracle::random_connected(n, p, rng, weighted);
    const auto src = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    out.push_back({std::move(g), src, lambdas[i % 3]});
  }
  return out;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t instances = 0;
  double worst_obj = 0.0, worst_feas = 0.0;
  for (bool weighted : {false, true}) {
    for (const Instance& in : solver_corpus(weighted)) {
      const DiffusionProblem p = single_source_problem(in.graph, in.source, in.lambda, 1e-6);
      const DualSolution s = solve_l2_diffusion(in.graph, p);
      const DualSolution q = qp_oracle_solve(in.graph, p);
      o.require(s.converged, "solver converged");
      worst_obj = std::max(worst_obj, std::abs(dual_objective(in.graph, p, s.x) - dual_objective(in.graph, p, q.x)));
      const Vector excess = settled_mass(in.graph, p, s.flow) - p.sink;
      worst_feas = std::max(worst_feas, excess.maxCoeff());
      o.require((s.x.array() >= 0.0).all(), "x >= 0");
      ++instances;
    }
  }
  const double secs = since(t0);
  o.detail << instances << " instances (half unit-weight, half weighted), max |objective gap| " << fmt(worst_obj)
           << ", max sink excess " << fmt(worst_feas) << ", " << fmt(secs) << " s";
  o.require(instances >= 200, "at least 200 graphs");
  o.require(worst_obj <= 1e-8, "objective gap <= 1e-8");
  o.require(worst_feas <= 1e-6, "feasibility within 1e-6");
  o.require(secs < 60.0, "runtime < 60 s");
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  Rng rng(77);
  double worst = 0.0;
  int graphs = 0;
  for (; graphs < 60; ++graphs) {
    const int n = 3 + static_cast<int>(uniform_below(rng, 18));
    const Graph g = oracle::random_connected(n, 0.1 + 0.4 * uniform01(rng), rng, graphs % 2 == 0);
    const EdgeScores l2 = l2_flow_betweenness_exact(g);
    const EdgeScores cf = cf_betweenness(g);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (Eigen::Index e = 0; e < cf.values.size(); ++e)
      worst = std::max(worst, std::abs(l2.values[e] - cf.values[e] / n2));
  }
  const double secs = since(t0);
  o.detail << graphs << " graphs, max |l2 - CF/|V|^2| " << fmt(worst) << ", " << fmt(secs) << " s";
  o.require(worst <= 1e-8, "agreement within 1e-8");
  o.require(secs < 60.0, "runtime < 60 s");
}

void criterion3(Outcome& o) {
  std::size_t solves = 0, violations = 0;
  double worst_ratio = 0.0;
  auto check = [&](const Graph& g, const DualSolution& s, double lambda) {
    const double bound = 2.0 * lambda * static_cast<double>(g.edge_count());
    const auto nz = static_cast<double>(nonzero_flow_edge_count(s));
    worst_ratio = std::max(worst_ratio, nz / bound);
    ++solves;
    if (!(nz < bound)) ++violations;
  };
  for (const Instance& in : solver_corpus()) {
    const DiffusionProblem p = single_source_problem(in.graph, in.source, in.lambda, 1e-6);
    check(in.graph, solve_l2_diffusion(in.graph, p), in.lambda);
  }
  // Weighted instances: the edge count bound does not apply, the saturated
  // support volume bound it rests on does.
  std::size_t weighted_violations = 0, at_count_bound = 0;
  for (const Instance& in : solver_corpus(true)) {
    const DiffusionProblem p = single_source_problem(in.graph, in.source, in.lambda, 1e-6);
    const DualSolution s = solve_l2_diffusion(in.graph, p);
    double support = 0.0;
    for (Eigen::Index v = 0; v < s.x.size(); ++v)
      if (s.x[v] > 0.0) support += in.graph.weighted_degree(static_cast<NodeId>(v));
    if (!(support < in.lambda * in.graph.volume())) ++weighted_violations;
    if (!(static_cast<double>(nonzero_flow_edge_count(s)) < 2.0 * in.lambda * static_cast<double>(in.graph.edge_count())))
      ++at_count_bound;
  }
  const PlantedPartition pp = gen_planted_partition(10000, 100, 0.15, 0.0005, 11);
  Rng rng(5);
  std::vector<NodeId> sources;
  for (int i = 0; i < 100; ++i) sources.push_back(static_cast<NodeId>(uniform_below(rng, 10000)));
  for (double lambda : {0.1, 0.02}) {
    for (NodeId v : sources)
      check(pp.graph, solve_l2_diffusion(pp.graph, single_source_problem(pp.graph, v, lambda, 1e-6)), lambda);
  }
  o.detail << solves << " solves, " << violations << " violations, max nonzero/(2 lambda |E|) " << fmt(worst_ratio)
           << "; large graph |E| = " << pp.graph.edge_count() << " | weighted corpus: " << weighted_violations
           << " support-volume violations, " << at_count_bound << " solves at or above the unweighted count bound";
  o.require(violations == 0, "no violations");
  o.require(weighted_violations == 0, "weighted support volume below lambda vol");
}

void criterion4(Outcome& o) {
  Rng rng(404);
  double worst = 0.0;
  int trees = 0;
  for (; trees < 60; ++trees) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 99));
    const Graph t = oracle::random_tree(n, rng);
    const EdgeScores cf = cf_betweenness(t);
    const EdgeScores sp = sp_betweenness(t);
    worst = std::max(worst, (cf.values - sp.values).lpNorm<Eigen::Infinity>());
  }
  o.detail << trees << " trees, max |CF - SP| " << fmt(worst);
  o.require(worst <= 1e-9, "CF = SP within 1e-9");
}

// Rank of the best and worst bridge edge (1-based) in descending score order.
struct BridgeRanks {
  std::size_t best_bridge = 0, worst_bridge = 0;
};

BridgeRanks bridge_ranks(const EdgeScores& s, const EdgeSet& bridges) {
  std::vector<EdgeId> order(static_cast<std::size_t>(s.values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return s.values[a] > s.values[b]; });
  BridgeRanks r;
  r.best_bridge = order.size() + 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (std::binary_search(bridges.begin(), bridges.end(), order[i])) {
      r.best_bridge = std::min(r.best_bridge, i + 1);
      r.worst_bridge = i + 1;
    }
  }
  return r;
}

bool bridges_on_top(const EdgeScores& s, const EdgeSet& bridges) {
  // Strictly above every other edge, so ties cannot decide the outcome.
  double min_bridge = INFINITY, max_other = -INFINITY;
  for (Eigen::Index e = 0; e < s.values.size(); ++e) {
    if (std::binary_search(bridges.begin(), bridges.end(), static_cast<EdgeId>(e)))
      min_bridge = std::min(min_bridge, s.values[e]);
    else
      max_other = std::max(max_other, s.values[e]);
  }
  return min_bridge > max_other;
}

bool intra_beats_all_bridges(const EdgeScores& s, const EdgeSet& bridges) {
  double max_bridge = -INFINITY, max_other = -INFINITY;
  for (Eigen::Index e = 0; e < s.values.size(); ++e) {
    if (std::binary_search(bridges.begin(), bridges.end(), static_cast<EdgeId>(e)))
      max_bridge = std::max(max_bridge, s.values[e]);
    else
      max_other = std::max(max_other, s.values[e]);
  }
  return max_other > max_bridge;
}

void criterion5(Outcome& o) {
  // Two K4 clusters joined member-to-member by three single-edge bridges.
  const BridgedClusters bc = gen_bridged_clusters({{4}, {4}}, {{0, 0, 1, 0, 1}, {0, 1, 1, 1, 1}, {0, 2, 1, 2, 1}});
  const Graph& g = bc.graph;
  const EdgeScores lf1 = lf_betweenness(g, 1.0, 1e-10);
  const EdgeScores cf = cf_betweenness(g);
  o.require(bc.bridge_edges.size() == 3, "three bridge edges");
  o.require(bridges_on_top(lf1, bc.bridge_edges), "LF(1) ranks the bridges in the top 3");
  o.require(bridges_on_top(cf, bc.bridge_edges), "CF ranks the bridges in the top 3");

  // T(v) = d(v) / (lambda vol) < 1 for every cluster node.
  const double lambda = 0.2;
  double max_t = 0.0;
  for (NodeId v = 0; v < 8; ++v) max_t = std::max(max_t, g.weighted_degree(v) / (lambda * g.volume()));
  o.require(max_t < 1.0, "T(v) < 1 on cluster nodes");
  const EdgeScores lfs = lf_betweenness(g, lambda, 1e-10);
  o.require(intra_beats_all_bridges(lfs, bc.bridge_edges), "an intra-cluster edge outranks every bridge at small lambda");
  const BridgeRanks r = bridge_ranks(lfs, bc.bridge_edges);
  o.detail << "LF(1) bridge ranks " << bridge_ranks(lf1, bc.bridge_edges).best_bridge << ".."
           << bridge_ranks(lf1, bc.bridge_edges).worst_bridge << ", CF " << bridge_ranks(cf, bc.bridge_edges).best_bridge
           << ".." << bridge_ranks(cf, bc.bridge_edges).worst_bridge << "; LF(" << lambda << ") max T " << fmt(max_t)
           << ", best bridge rank " << r.best_bridge;

  // Diagnostic only: bridge paths of lengths 1, 2 and 2.
  const BridgedClusters longer =
      gen_bridged_clusters({{4}, {4}}, {{0, 0, 1, 0, 1}, {0, 1, 1, 1, 2}, {0, 2, 1, 2, 2}});
  const double ls = 4.0 / longer.graph.volume() * 1.25;
  const EdgeScores a = lf_betweenness(longer.graph, 1.0, 1e-10);
  const EdgeScores b = lf_betweenness(longer.graph, ls, 1e-10);
  o.detail << " | diagnostic paths (1,2,2): LF(1) bridges on top " << bridges_on_top(a, longer.bridge_edges)
           << ", CF " << bridges_on_top(cf_betweenness(longer.graph), longer.bridge_edges) << ", LF(" << fmt(ls)
           << ") intra beats bridges " << intra_beats_all_bridges(b, longer.bridge_edges);
}

// ---------------------------------------------------------------------------
// Criteria 6, 7 and 9 share the desk-scale experiment.

struct Experiment {
  PlantedPartition pp;
  Graph graph;
  std::vector<int> community;
  ModelSpec model;
  InitialCondition init = InitialCondition::random(0.001);
  CalibrationResult calibration;
  std::map<std::string, StrategyScores> scores;
  ExperimentGrid grid;
  InterventionReport report;
};

const std::vector<double> kCoverages{0.05, 0.10, 0.15, 0.20, 0.25};

Experiment run_experiment(double p_out, unsigned threads) {
  Experiment x;
  x.pp = gen_planted_partition(2000, 100, 0.3, p_out, 1);
  const Component lcc = largest_connected_component(x.pp.graph);
  x.graph = lcc.graph;
  for (NodeId v : lcc.to_original) x.community.push_back(x.pp.community[static_cast<std::size_t>(v)]);
  x.model.kind = ModelKind::Agent;
  x.model.trials = 20;
  x.model.agent.seed = 7;
  x.model.threads = threads;
  x.calibration = calibrate_beta_final_size(x.graph, x.model, x.init, 0.85);
  x.model.set_beta(x.calibration.beta);
  x.grid.strategies = {parse_strategy("SP"), parse_strategy("LF(1/10)")};
  x.grid.coverages = kCoverages;
  for (const Strategy& s : x.grid.strategies) x.scores[s.name()] = compute_strategy_scores(x.graph, s, threads);
  x.report = run_intervention_experiment(x.graph, x.grid, x.scores, x.model, x.init, 0.1, threads);
  return x;
}

struct Comparison {
  bool recall_ok = true, final_ok = true;
  std::string table;
};

Comparison compare(const Experiment& x) {
  Comparison c;
  std::ostringstream t;
  const auto& sp = x.scores.at("SP").edges;
  const auto& lf = x.scores.at("LF(0.1)").edges;
  for (std::size_t i = 0; i < kCoverages.size(); ++i) {
    const double cov = kCoverages[i];
    const double r_sp = cut_edge_recall(x.community, select_top_edges(sp, cov), x.graph);
    const double r_lf = cut_edge_recall(x.community, select_top_edges(lf, cov), x.graph);
    const double f_sp = x.report.rows[i].metrics.final_size;
    const double f_lf = x.report.rows[kCoverages.size() + i].metrics.final_size;
    c.recall_ok = c.recall_ok && r_lf >= r_sp;
    c.final_ok = c.final_ok && f_lf <= f_sp;
    t << " " << fmt(cov * 100) << "%: recall LF " << fmt(r_lf) << " SP " << fmt(r_sp) << ", final LF " << fmt(f_lf)
      << " SP " << fmt(f_sp) << ";";
  }
  c.table = t.str();
  return c;
}

double mixing(const Experiment& x) {
  std::size_t cut = 0;
  for (const Edge& e : x.graph.edges())
    cut += x.community[static_cast<std::size_t>(e.u)] != x.community[static_cast<std::size_t>(e.v)] ? 1 : 0;
  return static_cast<double>(cut) / static_cast<double>(x.graph.edge_count());
}

void criterion6(Outcome& o) {
  const auto t0 = Clock::now();
  const Experiment x = run_experiment(0.003, 1);
  const double secs = since(t0);
  o.require(x.report.all_ok(), "every cell ran");
  const Comparison c = compare(x);
  o.detail << "n " << x.graph.node_count() << ", |E| " << x.graph.edge_count() << ", cut-edge fraction "
           << fmt(mixing(x)) << ", beta " << fmt(x.calibration.beta) << ", baseline final "
           << fmt(x.report.baseline.metrics.final_size) << ";" << c.table << " " << fmt(secs) << " s";
  o.require(std::abs(x.report.baseline.metrics.final_size - 0.85) <= 0.01, "baseline calibrated to 0.85");
  o.require(c.recall_ok, "LF recall >= SP recall at every coverage");
  o.require(c.final_ok, "LF final size <= SP final size at every coverage");
  o.require(secs < 900.0, "runtime < 15 min");

  // Diagnostic: the same experiment with one tenth of the inter-community edges.
  const Experiment y = run_experiment(0.0003, 1);
  const Comparison d = compare(y);
  o.detail << " | diagnostic p_out 0.0003 (cut-edge fraction " << fmt(mixing(y)) << "): recall "
           << (d.recall_ok ? "LF >= SP" : "not LF >= SP") << ", final " << (d.final_ok ? "LF <= SP" : "not LF <= SP")
           << ";" << d.table;
}

struct OdeCalibration {
  Graph graph;
  ModelSpec model;
  InitialCondition init = InitialCondition::random(0.001);
  std::vector<double> targets{0.55, 0.70, 0.85};
  std::vector<CalibrationResult> results;
};

OdeCalibration run_ode_calibration() {
  OdeCalibration c;
  c.graph = largest_connected_component(gen_planted_partition(2000, 100, 0.3, 0.003, 1).graph).graph;
  c.model.kind = ModelKind::Ode;
  for (double t : c.targets) c.results.push_back(calibrate_beta_final_size(c.graph, c.model, c.init, t));
  return c;
}

void criterion7(Outcome& o) {
  const OdeCalibration c = run_ode_calibration();
  double prev = -1.0;
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    ModelSpec m = c.model;
    m.set_beta(c.results[i].beta);
    const double f = run_model(c.graph, m, c.init).metrics.final_size;
    o.detail << "target " << c.targets[i] << ": beta " << fmt(c.results[i].beta) << ", final " << fmt(f) << "; ";
    o.require(std::abs(f - c.targets[i]) <= 0.01, "target reached within 0.01");
    o.require(c.results[i].beta > prev, "beta monotone in the target");
    prev = c.results[i].beta;
  }
}

void criterion8(Outcome& o) {
  const PlantedPartition pp = gen_planted_partition(10000, 100, 0.15, 0.0005, 11);
  const Graph& g = pp.graph;
  auto t0 = Clock::now();
  lf_betweenness(g, 0.1);
  const double t10 = since(t0);
  t0 = Clock::now();
  lf_betweenness(g, 0.02);
  const double t50 = since(t0);
  t0 = Clock::now();
  sp_betweenness(g);
  const double tsp = since(t0);
  o.detail << "|V| " << g.node_count() << ", |E| " << g.edge_count() << "; LF(1/10) " << fmt(t10) << " s, LF(1/50) "
           << fmt(t50) << " s, ratio " << fmt(t10 / t50) << "; SP " << fmt(tsp) << " s, SP/LF(1/50) "
           << fmt(tsp / t50);
  o.require(t10 / t50 >= 2.0 && t10 / t50 <= 10.0, "time ratio in [2, 10]");
  o.require(tsp >= 5.0 * t50, "LF(1/50) at least 5x faster than SP");
}

struct InvariantTally {
  std::size_t trajectories = 0, violations = 0;
  double worst_conservation = 0.0;

  void check(const EpidemicCurve& c, bool agent) {
    ++trajectories;
    bool ok = c.size() > 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (agent) {
        const auto& n = c.counts[k];
        ok = ok && n[0] + n[1] + n[2] + n[3] == static_cast<std::int64_t>(c.population);
      } else {
        const double err = std::abs(c.S[k] + c.E[k] + c.I[k] + c.R[k] - 1.0);
        worst_conservation = std::max(worst_conservation, err);
        ok = ok && err <= 1e-9;
      }
      if (k > 0) ok = ok && c.S[k] <= c.S[k - 1] && c.R[k] >= c.R[k - 1];
    }
    if (!ok) ++violations;
  }
};

std::string report_bytes(const InterventionReport& r) {
  std::ostringstream out;
  write_report_csv(out, r);
  for (const ReportRow& row : r.rows) write_curve_csv(out, row.curve);
  return out.str();
}

void criterion9(Outcome& o) {
  InvariantTally tally;
  const Experiment x = run_experiment(0.003, 1);

  // Every agent trial behind every ensemble of the experiment, replayed singly.
  auto replay = [&](const Graph& g, double reported_mean) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.model.trials; ++i) {
      AgentSeirParams p = x.model.agent;
      p.seed = trial_seed(x.model.agent.seed, i);
      const EpidemicCurve c = simulate_agent_seir(g, p, x.init);
      tally.check(c, true);
      sum += curve_metrics(c).final_size;
    }
    return std::abs(sum / static_cast<double>(x.model.trials) - reported_mean) <= 1e-12;
  };
  bool replay_ok = replay(x.graph, x.report.baseline.metrics.final_size);
  for (std::size_t s = 0; s < x.grid.strategies.size(); ++s) {
    const auto& sc = x.scores.at(x.grid.strategies[s].name());
    for (std::size_t i = 0; i < kCoverages.size(); ++i) {
      const Graph g = apply_edge_intervention(x.graph, select_top_edges(sc.edges, kCoverages[i]), 0.1);
      replay_ok = replay(g, x.report.rows[s * kCoverages.size() + i].metrics.final_size) && replay_ok;
    }
  }
  for (const ReportRow& row : x.report.rows) tally.check(row.curve, false);

  const OdeCalibration c = run_ode_calibration();
  for (const CalibrationResult& r : c.results) {
    ModelSpec m = c.model;
    m.set_beta(r.beta);
    tally.check(run_model(c.graph, m, c.init).curve, false);
  }

  // Same seeds, different thread counts.
  const Experiment y = run_experiment(0.003, 4);
  const bool bytes_ok = report_bytes(x.report) == report_bytes(y.report) && x.calibration.beta == y.calibration.beta;
  bool scores_ok = true;
  for (const auto& [name, s] : x.scores) scores_ok = scores_ok && s.fingerprint == y.scores.at(name).fingerprint;
  const OdeCalibration c2 = run_ode_calibration();
  for (std::size_t i = 0; i < c.results.size(); ++i) scores_ok = scores_ok && c.results[i].beta == c2.results[i].beta;

  o.detail << tally.trajectories << " trajectories, " << tally.violations << " invariant violations, worst ODE |sum - 1| "
           << fmt(tally.worst_conservation) << "; single-trial replay " << (replay_ok ? "matches" : "differs")
           << "; 1 vs 4 threads " << (bytes_ok && scores_ok ? "byte-identical" : "differs");
  o.require(tally.violations == 0, "no invariant violations");
  o.require(replay_ok, "trial replay reproduces ensemble means");
  o.require(bytes_ok, "report bytes identical across thread counts");
  o.require(scores_ok, "scores and calibration identical across runs");
}

void criterion10(Outcome& o) {
  const Graph tri = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
  const double phi7 = conductance(tri, {0, 1, 2});
  o.require(std::abs(phi7 - 1.0 / 7.0) <= 1e-15, "two-triangle conductance 1/7");
  const auto pts7 = ncp_approx(tri);
  double ncp7 = INFINITY;
  for (const NcpPoint& p : pts7)
    if (p.bucket == size_bucket(3)) ncp7 = p.conductance;
  o.require(std::abs(ncp7 - 1.0 / 7.0) <= 1e-12, "NCP finds 1/7 at size 3");

  std::vector<ClusterSpec> cl(10, ClusterSpec{5, ClusterShape::Clique});
  std::vector<BridgePath> br;
  for (int i = 0; i < 10; ++i) br.push_back({i, 0, (i + 1) % 10, 1, 1});
  const BridgedClusters ring = gen_bridged_clusters(cl, br);
  const double phi11 = conductance(ring.graph, {0, 1, 2, 3, 4});
  o.require(std::abs(phi11 - 1.0 / 11.0) <= 1e-15, "ring-of-K5 conductance 1/11");
  const auto pts11 = ncp_approx(ring.graph);
  double ncp11 = INFINITY;
  for (const NcpPoint& p : pts11)
    if (p.bucket == size_bucket(5)) ncp11 = p.conductance;
  o.require(std::abs(ncp11 - 1.0 / 11.0) <= 1e-12, "NCP finds 1/11 at size 5");
  o.detail << "conductance " << fmt(phi7) << " and " << fmt(phi11) << "; NCP " << fmt(ncp7) << " at size 3, "
           << fmt(ncp11) << " at size 5";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (which.empty()) {
    which.resize(criteria.size());
    std::iota(which.begin(), which.end(), 1);
  }
  bool all = true;
  for (int c : which) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::cerr << "no criterion " << c << '\n';
      return 2;
    }
    Outcome o;
    try {
      criteria[static_cast<std::size_t>(c - 1)](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << ' ' << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
