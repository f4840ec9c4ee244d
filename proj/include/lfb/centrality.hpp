#pragma once

#include "lfb/diffusion.hpp"
#include "lfb/graph.hpp"
#include "lfb/random.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace lfb {

enum class Method { LF, SP, CF, HD, EG, L2Flow };

/// Parameters that produced a score vector.
struct ScoreParams {
  std::optional<double> lambda;
  std::optional<double> epsilon;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  bool sampled_sources = false;
  bool normalized = false;
};

struct EdgeScores {
  Method method = Method::LF;
  /// Aligned with graph edge ids.
  Vector values;
  ScoreParams params;
};

struct NodeScores {
  Method method = Method::LF;
  Vector values;
  ScoreParams params;
};

/// "LF", "SP", ... ; LF with its lambda reads e.g. "LF(0.1)".
std::string method_name(Method method);
std::string score_tag(Method method, const ScoreParams& params);
std::optional<Method> parse_method(const std::string& name);

struct LfOptions {
  double lambda = 1.0;
  double epsilon = 1e-6;
  std::uint64_t max_pushes = 1'000'000'000;
  unsigned threads = 1;
  /// Opt-in Monte Carlo: average over this many uniformly drawn sources
  /// instead of all of them.
  std::optional<std::size_t> sampled_sources;
  std::uint64_t seed = 0;
};

/// Local-flow betweenness: mean over unit sources of |diffusion flow| with
/// sinks d / (lambda vol). Throws if any solve fails to converge.
EdgeScores lf_betweenness(const Graph& graph, const LfOptions& options);
EdgeScores lf_betweenness(const Graph& graph, double lambda, double epsilon = 1e-6);

/// Draws one (delta, sink) instance of a caller-defined distribution.
using DiffusionSampler = std::function<DiffusionProblem(Rng&)>;

/// Exact pairs mode: mean |f_st(e)| over all |V|^2 ordered (s, t), each f_st
/// from a grounded Laplacian solve. Requires a connected graph.
EdgeScores l2_flow_betweenness_exact(const Graph& graph);
/// Monte Carlo estimate of E|f*(e)| under `sampler`.
EdgeScores l2_flow_betweenness_sampled(const Graph& graph, const DiffusionSampler& sampler,
                                       std::size_t samples, std::uint64_t seed);

struct CfOptions {
  /// Up to this size the pseudoinverse is formed by a dense factorisation;
  /// above, column by column with conjugate gradients.
  std::size_t dense_limit = 5000;
  /// Larger graphs are refused.
  std::size_t size_limit = 10000;
  double cg_tolerance = 1e-13;
  bool normalized = false;
  unsigned threads = 1;
};

/// Current-flow betweenness: sum over ordered pairs s != t of |tau_st(e)|
/// (divided by |V|^2 when normalized).
EdgeScores cf_betweenness(const Graph& graph, const CfOptions& options = {});

struct SpOptions {
  unsigned threads = 1;
};

/// Shortest-path (hop count) edge betweenness over ordered pairs.
EdgeScores sp_betweenness(const Graph& graph, const SpOptions& options = {});

/// max of incident weighted degrees.
EdgeScores hd_edge_scores(const Graph& graph);

/// Dominant eigenvector of A + I by power iteration, max-norm one.
Vector eigenvector_centrality(const Graph& graph, double tol = 1e-10, std::size_t max_iter = 10000);
/// max of incident eigenvector entries.
EdgeScores eg_edge_scores(const Graph& graph, double tol = 1e-10, std::size_t max_iter = 10000);

/// Sum of incident edge scores per node.
NodeScores node_scores_from_edges(const Graph& graph, const EdgeScores& scores);

/// "u_label,v_label,score" in edge order, with header.
void write_edge_scores_csv(std::ostream& out, const Graph& graph, const EdgeScores& scores);
/// "label,score" in node order, with header.
void write_node_scores_csv(std::ostream& out, const Graph& graph, const NodeScores& scores);

/// FNV-1a over the bit patterns of the score values.
std::string score_fingerprint(const Vector& values);

}  // namespace lfb
