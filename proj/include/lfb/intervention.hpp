#pragma once

#include "lfb/centrality.hpp"
#include "lfb/epidemic.hpp"
#include "lfb/graph.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lfb {

enum class PlanMode { EdgeTargeted, Uniform, NodeImmunize };

/// A targeting strategy: "UI", an edge method such as "SP" or "LF(1/10)", or
/// a node-immunisation variant written "node:HD".
struct Strategy {
  PlanMode mode = PlanMode::EdgeTargeted;
  Method method = Method::SP;
  double lambda = 1.0;

  std::string name() const;
};

/// Accepts "UI", "HD", "EG", "SP", "CF", "LF(0.1)", "LF(1/10)" and any of the
/// scored ones behind a "node:" prefix. Case-insensitive.
Strategy parse_strategy(const std::string& text);

struct InterventionPlan {
  std::string method;
  double coverage = 0.0;
  double retain = 0.1;
  PlanMode mode = PlanMode::EdgeTargeted;
  EdgeSet edges;
  NodeSet nodes;
};

/// floor(coverage |E|) highest-scoring edges; ties go to the lower edge id.
EdgeSet select_top_edges(const EdgeScores& scores, double coverage);
/// floor(coverage |V|) highest-scoring nodes; ties go to the lower node id.
NodeSet select_top_nodes(const NodeScores& scores, double coverage);

/// Multiplies the weights of `edges` by retain (in (0, 1]).
Graph apply_edge_intervention(const Graph& graph, const EdgeSet& edges, double retain = 0.1);
/// Multiplies every weight by 1 - strength * coverage.
Graph apply_uniform_intervention(const Graph& graph, double coverage, double strength = 0.9);
/// Disconnects the floor(coverage |V|) top nodes.
Graph immunize_top_nodes(const Graph& graph, const NodeScores& scores, double coverage);

Graph apply_plan(const Graph& graph, const InterventionPlan& plan);

/// |selected ∩ cut edges| / |cut edges| for a ground-truth partition.
double cut_edge_recall(const std::vector<int>& communities, const EdgeSet& selected, const Graph& graph);
/// Fraction of the boundary edges of `cluster` contained in `selected`.
double out_link_coverage(const NodeSet& cluster, const EdgeSet& selected, const Graph& graph);

/// Scores behind a strategy, computed on the given (pre-intervention) graph.
struct StrategyScores {
  EdgeScores edges;
  std::optional<NodeScores> nodes;
  std::string fingerprint;
};
StrategyScores compute_strategy_scores(const Graph& graph, const Strategy& strategy, unsigned threads = 1,
                                       double epsilon = 1e-6);

struct ExperimentGrid {
  std::vector<Strategy> strategies;
  std::vector<double> coverages;
};

struct ReportRow {
  std::string method;
  double coverage = 0.0;
  CurveMetrics metrics;
  EpidemicCurve curve;
  std::size_t targeted = 0;
  std::optional<std::string> error;
};

struct InterventionReport {
  ReportRow baseline;
  std::vector<ReportRow> rows;
  /// Score fingerprint per strategy name.
  std::map<std::string, std::string> score_fingerprints;
  bool all_ok() const;
};

/// Scores are computed once per strategy on `graph` and never recomputed
/// after an intervention. Every cell runs with the same model, initial
/// condition and seeds. A failing cell is reported in its row.
InterventionReport run_intervention_experiment(const Graph& graph, const ExperimentGrid& grid, const ModelSpec& model,
                                               const InitialCondition& init, double retain = 0.1,
                                               unsigned threads = 1);

/// Precomputed-score variant.
InterventionReport run_intervention_experiment(const Graph& graph, const ExperimentGrid& grid,
                                               const std::map<std::string, StrategyScores>& scores,
                                               const ModelSpec& model, const InitialCondition& init,
                                               double retain = 0.1, unsigned threads = 1);

/// "method,coverage,final_size,peak_prevalence,peak_time"; baseline first.
void write_report_csv(std::ostream& out, const InterventionReport& report);

}  // namespace lfb
