#include "lfb/intervention.hpp"

#include "lfb/graph_io.hpp"
#include "lfb/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lfb {

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double parse_lambda(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t pos = 0;
  double value = 0.0;
  if (slash == std::string::npos) {
    value = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("bad lambda '" + text + "'");
  } else {
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    std::size_t pa = 0, pb = 0;
    const double num = std::stod(a, &pa);
    const double den = std::stod(b, &pb);
    if (pa != a.size() || pb != b.size() || den == 0.0) throw std::invalid_argument("bad lambda '" + text + "'");
    value = num / den;
  }
  if (!(value > 0.0 && value <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
  return value;
}

// Count of items for a coverage fraction; the small slack keeps products such
// as 0.29 * 100 from flooring to 28.
std::size_t coverage_count(double coverage, std::size_t total) {
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw std::invalid_argument("coverage must lie in [0, 1]");
  const auto k = static_cast<std::size_t>(std::floor(coverage * static_cast<double>(total) + 1e-9));
  return std::min(k, total);
}

template <typename Id>
std::vector<Id> top_k(const Vector& values, std::size_t k) {
  std::vector<Id> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Id{0});
  std::stable_sort(order.begin(), order.end(), [&](Id a, Id b) { return values[a] > values[b]; });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

std::string Strategy::name() const {
  std::string base;
  if (mode == PlanMode::Uniform) return "UI";
  base = method == Method::LF ? "LF(" + format_real(lambda) + ")" : method_name(method);
  return mode == PlanMode::NodeImmunize ? "node:" + base : base;
}

Strategy parse_strategy(const std::string& text) {
  std::string s = upper(text);
  Strategy out;
  if (s == "UI") {
    out.mode = PlanMode::Uniform;
    return out;
  }
  if (s.rfind("NODE:", 0) == 0) {
    out.mode = PlanMode::NodeImmunize;
    s = s.substr(5);
  }
  if (s.rfind("LF", 0) == 0) {
    out.method = Method::LF;
    if (s.size() > 2) {
      if (s[2] != '(' || s.back() != ')') throw std::invalid_argument("expected LF(lambda), got '" + text + "'");
      out.lambda = parse_lambda(s.substr(3, s.size() - 4));
    }
    return out;
  }
  const auto m = parse_method(s);
  if (!m || *m == Method::L2Flow) throw std::invalid_argument("unknown strategy '" + text + "'");
  out.method = *m;
  return out;
}

EdgeSet select_top_edges(const EdgeScores& scores, double coverage) {
  return top_k<EdgeId>(scores.values, coverage_count(coverage, static_cast<std::size_t>(scores.values.size())));
}

NodeSet select_top_nodes(const NodeScores& scores, double coverage) {
  return top_k<NodeId>(scores.values, coverage_count(coverage, static_cast<std::size_t>(scores.values.size())));
}

Graph apply_edge_intervention(const Graph& graph, const EdgeSet& edges, double retain) {
  if (!(retain > 0.0 && retain <= 1.0)) throw std::invalid_argument("retain factor must lie in (0, 1]");
  std::map<EdgeId, double> factors;
  for (EdgeId e : edges) factors[e] = retain;
  return reweigh_edges(graph, factors);
}

Graph apply_uniform_intervention(const Graph& graph, double coverage, double strength) {
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw std::invalid_argument("coverage must lie in [0, 1]");
  const double keep = 1.0 - strength * coverage;
  if (!(keep > 0.0)) throw std::invalid_argument("strength * coverage must be below 1");
  std::vector<double> w(graph.edge_count());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = graph.edges()[i].w * keep;
  return graph.with_weights(w);
}

Graph immunize_top_nodes(const Graph& graph, const NodeScores& scores, double coverage) {
  if (static_cast<std::size_t>(scores.values.size()) != graph.node_count())
    throw std::invalid_argument("node score length does not match node count");
  return disconnect_nodes(graph, select_top_nodes(scores, coverage));
}

Graph apply_plan(const Graph& graph, const InterventionPlan& plan) {
  switch (plan.mode) {
    case PlanMode::EdgeTargeted: return apply_edge_intervention(graph, plan.edges, plan.retain);
    case PlanMode::Uniform: return apply_uniform_intervention(graph, plan.coverage, 1.0 - plan.retain);
    case PlanMode::NodeImmunize: return disconnect_nodes(graph, plan.nodes);
  }
  return graph;
}

double cut_edge_recall(const std::vector<int>& communities, const EdgeSet& selected, const Graph& graph) {
  if (communities.size() != graph.node_count())
    throw std::invalid_argument("community labels must cover every node");
  std::vector<char> chosen(graph.edge_count(), 0);
  for (EdgeId e : selected) chosen.at(static_cast<std::size_t>(e)) = 1;
  std::size_t cut = 0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    if (communities[static_cast<std::size_t>(e.u)] != communities[static_cast<std::size_t>(e.v)]) {
      ++cut;
      hit += chosen[i] ? 1 : 0;
    }
  }
  if (cut == 0) throw std::invalid_argument("partition has no cut edges; recall undefined");
  return static_cast<double>(hit) / static_cast<double>(cut);
}

double out_link_coverage(const NodeSet& cluster, const EdgeSet& selected, const Graph& graph) {
  std::vector<char> inside(graph.node_count(), 0);
  for (NodeId v : cluster) inside.at(static_cast<std::size_t>(v)) = 1;
  std::vector<char> chosen(graph.edge_count(), 0);
  for (EdgeId e : selected) chosen.at(static_cast<std::size_t>(e)) = 1;
  std::size_t boundary = 0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    if (inside[static_cast<std::size_t>(e.u)] != inside[static_cast<std::size_t>(e.v)]) {
      ++boundary;
      hit += chosen[i] ? 1 : 0;
    }
  }
  if (boundary == 0) throw std::invalid_argument("cluster has an empty boundary");
  return static_cast<double>(hit) / static_cast<double>(boundary);
}

StrategyScores compute_strategy_scores(const Graph& graph, const Strategy& strategy, unsigned threads,
                                       double epsilon) {
  StrategyScores out;
  if (strategy.mode == PlanMode::Uniform) return out;
  switch (strategy.method) {
    case Method::LF: {
      LfOptions o;
      o.lambda = strategy.lambda;
      o.epsilon = epsilon;
      o.threads = threads;
      out.edges = lf_betweenness(graph, o);
      break;
    }
    case Method::SP: out.edges = sp_betweenness(graph, {threads}); break;
    case Method::CF: {
      CfOptions o;
      o.threads = threads;
      out.edges = cf_betweenness(graph, o);
      break;
    }
    case Method::HD: out.edges = hd_edge_scores(graph); break;
    case Method::EG: out.edges = eg_edge_scores(graph); break;
    case Method::L2Flow: throw std::invalid_argument("L2FLOW is not an intervention strategy");
  }
  if (strategy.mode == PlanMode::NodeImmunize) {
    // Degree and eigenvector rank nodes by their own node score.
    NodeScores ns;
    if (strategy.method == Method::HD) {
      ns.method = Method::HD;
      ns.values = graph.weighted_degrees();
    } else if (strategy.method == Method::EG) {
      ns.method = Method::EG;
      ns.values = eigenvector_centrality(graph);
    } else {
      ns = node_scores_from_edges(graph, out.edges);
    }
    out.fingerprint = score_fingerprint(ns.values);
    out.nodes = std::move(ns);
  } else {
    out.fingerprint = score_fingerprint(out.edges.values);
  }
  return out;
}

bool InterventionReport::all_ok() const {
  if (baseline.error) return false;
  return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.error.has_value(); });
}

namespace {

ReportRow run_cell(const Graph& graph, const ModelSpec& model, const InitialCondition& init, std::string method,
                   double coverage, const Graph* modified, std::size_t targeted) {
  ReportRow row;
  row.method = std::move(method);
  row.coverage = coverage;
  row.targeted = targeted;
  try {
    ModelOutcome outcome = run_model(modified ? *modified : graph, model, init);
    row.metrics = outcome.metrics;
    row.curve = std::move(outcome.curve);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

InterventionReport run_intervention_experiment(const Graph& graph, const ExperimentGrid& grid,
                                               const std::map<std::string, StrategyScores>& scores,
                                               const ModelSpec& model, const InitialCondition& init, double retain,
                                               unsigned threads) {
  InterventionReport report;
  for (const auto& [name, s] : scores)
    if (!s.fingerprint.empty()) report.score_fingerprints[name] = s.fingerprint;

  const std::size_t cells = grid.strategies.size() * grid.coverages.size();
  // Parallelism goes to the grid cells; each cell's ensemble then runs on one thread.
  ModelSpec spec = model;
  spec.threads = cells > 1 ? 1 : threads;
  report.baseline = run_cell(graph, spec, init, "none", 0.0, nullptr, 0);
  report.rows.resize(cells);
  parallel_for(cells, threads, [&](std::size_t idx) {
    const Strategy& strategy = grid.strategies[idx / grid.coverages.size()];
    const double coverage = grid.coverages[idx % grid.coverages.size()];
    const std::string name = strategy.name();
    try {
      InterventionPlan plan;
      plan.method = name;
      plan.coverage = coverage;
      plan.retain = retain;
      plan.mode = strategy.mode;
      std::size_t targeted = graph.edge_count();
      if (strategy.mode != PlanMode::Uniform) {
        auto it = scores.find(name);
        if (it == scores.end()) throw std::invalid_argument("no scores for strategy " + name);
        if (strategy.mode == PlanMode::EdgeTargeted) {
          plan.edges = select_top_edges(it->second.edges, coverage);
          targeted = plan.edges.size();
        } else {
          if (!it->second.nodes) throw std::invalid_argument("no node scores for strategy " + name);
          plan.nodes = select_top_nodes(*it->second.nodes, coverage);
          targeted = plan.nodes.size();
        }
      }
      const Graph modified = apply_plan(graph, plan);
      report.rows[idx] = run_cell(graph, spec, init, name, coverage, &modified, targeted);
    } catch (const std::exception& e) {
      ReportRow row;
      row.method = name;
      row.coverage = coverage;
      row.error = e.what();
      report.rows[idx] = std::move(row);
    }
  });
  return report;
}

InterventionReport run_intervention_experiment(const Graph& graph, const ExperimentGrid& grid,
                                               const ModelSpec& model, const InitialCondition& init, double retain,
                                               unsigned threads) {
  std::map<std::string, StrategyScores> scores;
  std::map<std::string, std::string> failures;
  for (const Strategy& s : grid.strategies) {
    if (s.mode == PlanMode::Uniform) continue;
    const std::string name = s.name();
    if (scores.count(name)) continue;
    try {
      scores[name] = compute_strategy_scores(graph, s, threads);
    } catch (const std::exception& e) {
      failures[name] = e.what();
    }
  }
  InterventionReport report = run_intervention_experiment(graph, grid, scores, model, init, retain, threads);
  for (ReportRow& row : report.rows) {
    auto it = failures.find(row.method);
    if (it != failures.end()) row.error = "scoring failed: " + it->second;
  }
  return report;
}

void write_report_csv(std::ostream& out, const InterventionReport& report) {
  out << "method,coverage,final_size,peak_prevalence,peak_time\n";
  auto line = [&](const ReportRow& r) {
    if (r.error) {
      out << r.method << ',' << format_real(r.coverage) << ",nan,nan,nan\n";
      return;
    }
    out << r.method << ',' << format_real(r.coverage) << ',' << format_real(r.metrics.final_size) << ','
        << format_real(r.metrics.peak_prevalence) << ',' << format_real(r.metrics.peak_time) << '\n';
  };
  line(report.baseline);
  for (const ReportRow& r : report.rows) line(r);
}

}  // namespace lfb
