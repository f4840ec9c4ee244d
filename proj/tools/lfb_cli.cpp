// lfb: batch front end for local-flow betweenness, epidemic simulation and
// intervention experiments. Every output file gets a JSON sidecar
// (<out>.json) holding the full option set and the wall time.

#include "lfb/analysis.hpp"
#include "lfb/centrality.hpp"
#include "lfb/epidemic.hpp"
#include "lfb/generators.hpp"
#include "lfb/graph_io.hpp"
#include "lfb/intervention.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::json;
using lfb::Graph;

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string graph;
  std::string populations;
  bool lcc = false;
  bool unweighted = false;
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

struct ModelFlags {
  std::string model = "agent";
  double beta = -1.0;
  double sigma = 1.0 / 2.5;
  double gamma = 1.0 / 5.0;
  double dt = 0.05;
  double horizon = 365.0;
  bool no_self_mixing = false;
  std::size_t trials = 1;
  std::string init = "random:0.001";
  double init_fraction = 0.001;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return f;
}

void add_common(CLI::App* app, Common& c, bool needs_graph = true) {
  if (needs_graph) {
    app->add_option("--graph", c.graph, "Edge list: 'u v [w]' per line")->required();
    app->add_option("--populations", c.populations, "Node populations: 'label N' per line");
    app->add_flag("--lcc", c.lcc, "Restrict to the largest connected component");
    app->add_flag("--unweighted", c.unweighted, "Ignore a weight column");
  }
  app->add_option("--out", c.out, "Output file")->required();
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
}

void add_model(CLI::App* app, ModelFlags& m) {
  app->add_option("--model", m.model, "Epidemic model")->check(CLI::IsMember({"ode", "agent"}))->capture_default_str();
  app->add_option("--beta", m.beta, "Transmission rate (ode) or probability (agent)");
  app->add_option("--sigma", m.sigma, "E->I rate")->capture_default_str();
  app->add_option("--gamma", m.gamma, "I->R rate")->capture_default_str();
  app->add_option("--dt", m.dt, "ODE step (days)")->capture_default_str();
  app->add_option("--horizon", m.horizon, "Days to simulate")->capture_default_str();
  app->add_flag("--no-self-mixing", m.no_self_mixing, "ODE: drop the within-node mixing term");
  app->add_option("--trials", m.trials, "Agent ensemble size")->capture_default_str();
  app->add_option("--init", m.init, "cluster:FILE (node labels) or random:FRACTION")->capture_default_str();
  app->add_option("--init-fraction", m.init_fraction, "Infectious fraction of cluster nodes (ode)")
      ->capture_default_str();
}

Graph load_graph(const Common& c) {
  auto in = open_in(c.graph);
  lfb::EdgeListOptions opts;
  opts.weighted = !c.unweighted;
  Graph g = lfb::load_edge_list(in, opts).graph;
  if (!c.populations.empty()) {
    auto pin = open_in(c.populations);
    g = lfb::load_node_attributes(pin, g);
  }
  if (c.lcc) g = lfb::largest_connected_component(g).graph;
  return g;
}

lfb::InitialCondition parse_init(const ModelFlags& m, const Graph& g, std::optional<std::uint64_t> seed) {
  const auto colon = m.init.find(':');
  if (colon == std::string::npos) throw UsageError("--init expects cluster:FILE or random:FRACTION");
  const std::string kind = m.init.substr(0, colon);
  const std::string arg = m.init.substr(colon + 1);
  if (kind == "random") {
    double f = 0.0;
    try {
      f = std::stod(arg);
    } catch (const std::exception&) {
      throw UsageError("bad fraction in --init " + m.init);
    }
    return lfb::InitialCondition::random(f, seed);
  }
  if (kind == "cluster") {
    auto in = open_in(arg);
    lfb::NodeSet nodes;
    std::string label;
    while (in >> label) {
      if (label.rfind('#', 0) == 0) {
        std::getline(in, label);
        continue;
      }
      const auto v = g.find_label(label);
      if (!v) throw std::runtime_error("initial cluster node '" + label + "' is not in the graph");
      nodes.push_back(*v);
    }
    return lfb::InitialCondition::cluster(std::move(nodes), m.init_fraction);
  }
  throw UsageError("--init expects cluster:FILE or random:FRACTION");
}

lfb::ModelSpec make_model(const ModelFlags& m, const Common& c) {
  lfb::ModelSpec spec;
  spec.kind = m.model == "ode" ? lfb::ModelKind::Ode : lfb::ModelKind::Agent;
  spec.ode.sigma = m.sigma;
  spec.ode.gamma = m.gamma;
  spec.ode.dt = m.dt;
  spec.ode.horizon = m.horizon;
  spec.ode.self_mixing = !m.no_self_mixing;
  spec.agent.sigma = m.sigma;
  spec.agent.gamma = m.gamma;
  spec.agent.horizon = static_cast<int>(m.horizon);
  spec.agent.seed = c.seed;
  if (m.beta >= 0.0) spec.set_beta(m.beta);
  spec.trials = m.trials;
  spec.threads = c.threads;
  return spec;
}

json options_json(const CLI::App* app) {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 && opt->get_expected_max() <= 1 ? json(r.front()) : json(r);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

void write_sidecar(const CLI::App* app, const std::string& out, double seconds, json extra = json::object()) {
  json j;
  j["command"] = app->get_name();
  j["options"] = options_json(app);
  j["wall_seconds"] = seconds;
  for (auto& [k, v] : extra.items()) j[k] = v;
  auto f = open_out(out + ".json");
  f << j.dump(2) << '\n';
}

json metrics_json(const lfb::CurveMetrics& m) {
  return {{"peak", m.peak_prevalence}, {"peak_time", m.peak_time}, {"final_size", m.final_size}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-flow betweenness, SEIR simulation and intervention experiments"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  // gen
  Common gen_c;
  std::string gen_kind;
  int gen_n = 200, gen_k = 10;
  double gen_pin = 0.3, gen_pout = 0.005;
  std::vector<int> gen_sizes{4, 4};
  std::string gen_shape = "clique";
  std::vector<std::string> gen_bridges{"0.0-1.0:1"};
  auto* gen = app.add_subcommand("gen", "Generate a synthetic graph");
  gen->add_option("kind", gen_kind, "planted-partition | bridged-clusters")
      ->required()
      ->check(CLI::IsMember({"planted-partition", "bridged-clusters"}));
  gen->add_option("--n", gen_n, "Nodes (planted partition)")->capture_default_str();
  gen->add_option("--k", gen_k, "Communities (planted partition)")->capture_default_str();
  gen->add_option("--p-in", gen_pin, "Intra-community edge probability")->capture_default_str();
  gen->add_option("--p-out", gen_pout, "Inter-community edge probability")->capture_default_str();
  gen->add_option("--sizes", gen_sizes, "Cluster sizes (bridged clusters)")->delimiter(',')->capture_default_str();
  gen->add_option("--shape", gen_shape, "Cluster shape")->check(CLI::IsMember({"clique", "grid"}))->capture_default_str();
  gen->add_option("--bridges", gen_bridges, "Bridge paths as A.i-B.j:LENGTH")->delimiter(',')->capture_default_str();
  add_common(gen, gen_c, false);

  // betweenness
  Common bw_c;
  std::string bw_method = "LF";
  double bw_lambda = 1.0, bw_eps = 1e-6;
  std::optional<std::size_t> bw_samples;
  std::string bw_nodes_out;
  bool bw_normalized = false;
  auto* bw = app.add_subcommand("betweenness", "Edge scores for one method");
  add_common(bw, bw_c);
  bw->add_option("--method", bw_method, "LF | SP | CF | HD | EG | L2FLOW")->capture_default_str();
  bw->add_option("--lambda", bw_lambda, "LF locality parameter in (0, 1]")->capture_default_str();
  bw->add_option("--epsilon", bw_eps, "LF push tolerance")->capture_default_str();
  bw->add_option("--samples", bw_samples, "LF: average over this many random sources");
  bw->add_option("--node-out", bw_nodes_out, "Also write node scores here");
  bw->add_flag("--normalized", bw_normalized, "CF: divide by |V|^2");

  // simulate
  Common sim_c;
  ModelFlags sim_m;
  auto* sim = app.add_subcommand("simulate", "Run one SEIR model");
  add_common(sim, sim_c);
  add_model(sim, sim_m);

  // intervene
  Common iv_c;
  ModelFlags iv_m;
  std::vector<std::string> iv_methods{"UI", "HD", "EG", "SP", "CF", "LF(1/2)", "LF(1/10)", "LF(1/50)"};
  std::vector<double> iv_coverages{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  double iv_rho = 0.1, iv_eps = 1e-6;
  std::string iv_curves;
  auto* iv = app.add_subcommand("intervene", "Strategy x coverage grid of intervention outcomes");
  add_common(iv, iv_c);
  add_model(iv, iv_m);
  iv->add_option("--method", iv_methods, "Strategies, e.g. UI,SP,LF(1/10),node:HD")->delimiter(',')->capture_default_str();
  iv->add_option("--coverage", iv_coverages, "Coverage levels in [0, 1]")->delimiter(',')->capture_default_str();
  iv->add_option("--rho", iv_rho, "Weight retained on targeted edges")->capture_default_str();
  iv->add_option("--epsilon", iv_eps, "LF push tolerance")->capture_default_str();
  iv->add_option("--curves", iv_curves, "Directory for per-cell curve CSVs");

  // ncp
  Common ncp_c;
  std::vector<double> ncp_lambdas;
  std::size_t ncp_max_seeds = 10000;
  double ncp_eps = 1e-6;
  auto* ncp = app.add_subcommand("ncp", "Approximate network community profile");
  add_common(ncp, ncp_c);
  ncp->add_option("--lambda", ncp_lambdas, "Lambda grid (default 2^-k)")->delimiter(',');
  ncp->add_option("--max-seeds", ncp_max_seeds, "Seed nodes sampled above this size")->capture_default_str();
  ncp->add_option("--epsilon", ncp_eps, "Push tolerance")->capture_default_str();

  // degrees
  Common deg_c;
  auto* deg = app.add_subcommand("degrees", "Degree histogram");
  add_common(deg, deg_c);

  // calibrate
  Common cal_c;
  ModelFlags cal_m;
  double cal_target = 0.85, cal_tol = 0.01;
  std::vector<double> cal_bracket;
  auto* cal = app.add_subcommand("calibrate", "Find beta giving a target final size");
  add_common(cal, cal_c);
  add_model(cal, cal_m);
  cal->add_option("--target", cal_target, "Target final size")->capture_default_str();
  cal->add_option("--tolerance", cal_tol, "Accepted |final size - target|")->capture_default_str();
  cal->add_option("--bracket", cal_bracket, "Beta bracket LO,HI")->delimiter(',')->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*gen) {
      std::ostringstream communities;
      Graph g;
      if (gen_kind == "planted-partition") {
        lfb::PlantedPartition pp;
        try {
          pp = lfb::gen_planted_partition(gen_n, gen_k, gen_pin, gen_pout, gen_c.seed);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        g = std::move(pp.graph);
        for (std::size_t v = 0; v < g.node_count(); ++v)
          communities << g.label(static_cast<lfb::NodeId>(v)) << ' ' << pp.community[v] << '\n';
      } else {
        std::vector<lfb::ClusterSpec> clusters;
        for (int s : gen_sizes)
          clusters.push_back({s, gen_shape == "grid" ? lfb::ClusterShape::Grid : lfb::ClusterShape::Clique});
        std::vector<lfb::BridgePath> bridges;
        for (const std::string& b : gen_bridges) {
          lfb::BridgePath p;
          char dot1, dash, dot2, colon;
          std::istringstream in(b);
          if (!(in >> p.cluster_a >> dot1 >> p.member_a >> dash >> p.cluster_b >> dot2 >> p.member_b >> colon >>
                p.length) ||
              dot1 != '.' || dash != '-' || dot2 != '.' || colon != ':')
            throw UsageError("bridge '" + b + "' is not of the form A.i-B.j:LENGTH");
          bridges.push_back(p);
        }
        lfb::BridgedClusters bc;
        try {
          bc = lfb::gen_bridged_clusters(clusters, bridges);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        g = std::move(bc.graph);
        for (std::size_t v = 0; v < g.node_count(); ++v)
          communities << g.label(static_cast<lfb::NodeId>(v)) << ' ' << bc.cluster[v] << '\n';
      }
      {
        auto f = open_out(gen_c.out);
        lfb::write_edge_list(f, g);
      }
      {
        auto f = open_out(gen_c.out + ".communities");
        f << communities.str();
      }
      write_sidecar(gen, gen_c.out, seconds_since(t0),
                    {{"nodes", g.node_count()}, {"edges", g.edge_count()}});
      return 0;
    }

    if (*bw) {
      const auto method = lfb::parse_method(bw_method);
      if (!method) throw UsageError("unknown method '" + bw_method + "'");
      const Graph g = load_graph(bw_c);
      lfb::EdgeScores scores;
      switch (*method) {
        case lfb::Method::LF: {
          lfb::LfOptions o;
          o.lambda = bw_lambda;
          o.epsilon = bw_eps;
          o.threads = bw_c.threads;
          o.sampled_sources = bw_samples;
          o.seed = bw_c.seed;
          scores = lfb::lf_betweenness(g, o);
          break;
        }
        case lfb::Method::SP: scores = lfb::sp_betweenness(g, {bw_c.threads}); break;
        case lfb::Method::CF: {
          lfb::CfOptions o;
          o.normalized = bw_normalized;
          o.threads = bw_c.threads;
          scores = lfb::cf_betweenness(g, o);
          break;
        }
        case lfb::Method::HD: scores = lfb::hd_edge_scores(g); break;
        case lfb::Method::EG: scores = lfb::eg_edge_scores(g); break;
        case lfb::Method::L2Flow: scores = lfb::l2_flow_betweenness_exact(g); break;
      }
      const double secs = seconds_since(t0);
      {
        auto f = open_out(bw_c.out);
        lfb::write_edge_scores_csv(f, g, scores);
      }
      if (!bw_nodes_out.empty()) {
        auto f = open_out(bw_nodes_out);
        lfb::write_node_scores_csv(f, g, lfb::node_scores_from_edges(g, scores));
      }
      write_sidecar(bw, bw_c.out, secs,
                    {{"score", lfb::score_tag(scores.method, scores.params)},
                     {"fingerprint", lfb::score_fingerprint(scores.values)},
                     {"nodes", g.node_count()},
                     {"edges", g.edge_count()}});
      std::cout << "wall_seconds " << lfb::format_real(secs) << '\n';
      return 0;
    }

    if (*sim) {
      const Graph g = load_graph(sim_c);
      const lfb::ModelSpec spec = make_model(sim_m, sim_c);
      const lfb::InitialCondition init = parse_init(sim_m, g, std::nullopt);
      const lfb::ModelOutcome res = lfb::run_model(g, spec, init);
      {
        auto f = open_out(sim_c.out);
        lfb::write_curve_csv(f, res.curve);
      }
      json trials = json::array();
      for (const auto& t : res.trials) {
        json j = metrics_json(t.metrics);
        j["seed"] = t.seed;
        trials.push_back(j);
      }
      json summary = metrics_json(res.metrics);
      summary["beta"] = spec.beta();
      summary["trials"] = trials;
      write_sidecar(sim, sim_c.out, seconds_since(t0), {{"summary", summary}, {"warnings", res.curve.warnings}});
      return 0;
    }

    if (*iv) {
      lfb::ExperimentGrid grid;
      for (const std::string& m : iv_methods) {
        try {
          grid.strategies.push_back(lfb::parse_strategy(m));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      grid.coverages = iv_coverages;
      const Graph g = load_graph(iv_c);
      const lfb::ModelSpec spec = make_model(iv_m, iv_c);
      const lfb::InitialCondition init = parse_init(iv_m, g, iv_c.seed);

      std::map<std::string, lfb::StrategyScores> scores;
      json failures = json::object();
      for (const lfb::Strategy& s : grid.strategies) {
        const std::string name = s.name();
        if (s.mode == lfb::PlanMode::Uniform || scores.count(name) || failures.contains(name)) continue;
        try {
          scores[name] = lfb::compute_strategy_scores(g, s, iv_c.threads, iv_eps);
        } catch (const std::exception& e) {
          failures[name] = std::string("scoring failed: ") + e.what();
        }
      }
      const lfb::InterventionReport report =
          lfb::run_intervention_experiment(g, grid, scores, spec, init, iv_rho, iv_c.threads);
      {
        auto f = open_out(iv_c.out);
        lfb::write_report_csv(f, report);
      }
      json rows = json::array();
      auto row_json = [](const lfb::ReportRow& r) {
        json j = r.error ? json{{"error", *r.error}} : metrics_json(r.metrics);
        j["method"] = r.method;
        j["coverage"] = r.coverage;
        j["targeted"] = r.targeted;
        return j;
      };
      rows.push_back(row_json(report.baseline));
      for (const auto& r : report.rows) {
        rows.push_back(row_json(r));
        if (r.error && !failures.contains(r.method)) failures[r.method + "@" + lfb::format_real(r.coverage)] = *r.error;
      }
      if (!iv_curves.empty()) {
        auto dump = [&](const lfb::ReportRow& r) {
          if (r.error) return;
          auto f = open_out(iv_curves + "/" + r.method + "_" + lfb::format_real(r.coverage) + ".csv");
          lfb::write_curve_csv(f, r.curve);
        };
        dump(report.baseline);
        for (const auto& r : report.rows) dump(r);
      }
      json extra{{"rows", rows}, {"score_fingerprints", report.score_fingerprints}, {"beta", spec.beta()}};
      if (!failures.empty()) extra["failures"] = failures;
      write_sidecar(iv, iv_c.out, seconds_since(t0), extra);
      if (!failures.empty()) {
        auto f = open_out(iv_c.out + ".failures.json");
        f << failures.dump(2) << '\n';
        std::cerr << "lfb intervene: " << failures.size() << " failed cell group(s); see " << iv_c.out
                  << ".failures.json\n";
        return kRuntime;
      }
      return 0;
    }

    if (*ncp) {
      const Graph g = load_graph(ncp_c);
      lfb::NcpOptions o;
      o.lambdas = ncp_lambdas;
      o.max_seeds = ncp_max_seeds;
      o.seed = ncp_c.seed;
      o.epsilon = ncp_eps;
      o.threads = ncp_c.threads;
      const auto points = lfb::ncp_approx(g, o);
      {
        auto f = open_out(ncp_c.out);
        lfb::write_ncp_csv(f, points, o.buckets_per_decade);
      }
      json pts = json::array();
      for (const auto& p : points)
        pts.push_back({{"bucket", p.bucket}, {"size", p.size}, {"conductance", p.conductance},
                       {"seed_node", g.label(p.seed_node)}, {"lambda", p.lambda}});
      write_sidecar(ncp, ncp_c.out, seconds_since(t0), {{"points", pts}});
      return 0;
    }

    if (*deg) {
      const Graph g = load_graph(deg_c);
      {
        auto f = open_out(deg_c.out);
        lfb::write_degree_csv(f, lfb::degree_distribution(g));
      }
      write_sidecar(deg, deg_c.out, seconds_since(t0), {{"nodes", g.node_count()}});
      return 0;
    }

    if (*cal) {
      const Graph g = load_graph(cal_c);
      const lfb::ModelSpec spec = make_model(cal_m, cal_c);
      const lfb::InitialCondition init = parse_init(cal_m, g, cal_c.seed);
      lfb::CalibrationOptions o;
      o.tolerance = cal_tol;
      if (cal_bracket.size() == 2) o.bracket = std::pair{cal_bracket[0], cal_bracket[1]};
      const auto r = lfb::calibrate_beta_final_size(g, spec, init, cal_target, o);
      json result{{"beta", r.beta}, {"achieved", r.achieved}, {"iterations", r.iterations}};
      {
        auto f = open_out(cal_c.out);
        f << result.dump(2) << '\n';
      }
      write_sidecar(cal, cal_c.out, seconds_since(t0), {{"result", result}});
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "lfb: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "lfb: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
