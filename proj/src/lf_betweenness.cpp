#include "lfb/centrality.hpp"
#include "lfb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace lfb {

namespace {

// Sources are solved in windows, in parallel within a window; each source's
// flows are kept as a sparse list and added to the total strictly in source
// order, so the sum is the same as a sequential loop for any thread count.
constexpr std::size_t kWindow = 256;

}  // namespace

EdgeScores lf_betweenness(const Graph& graph, const LfOptions& options) {
  const Vector sink = sink_capacities(graph, options.lambda);
  const std::size_t n = graph.node_count();
  const std::size_t m = graph.edge_count();

  std::vector<NodeId> sources;
  if (options.sampled_sources) {
    if (*options.sampled_sources == 0) throw std::invalid_argument("sampled source count must be positive");
    Rng rng(options.seed);
    for (std::size_t i = 0; i < *options.sampled_sources; ++i)
      sources.push_back(static_cast<NodeId>(uniform_below(rng, n)));
  } else {
    sources.resize(n);
    for (std::size_t v = 0; v < n; ++v) sources[v] = static_cast<NodeId>(v);
  }

  using Contribution = std::vector<std::pair<EdgeId, double>>;
  std::vector<Contribution> window(std::min(kWindow, sources.size()));
  std::vector<std::unique_ptr<DiffusionSolver>> solvers(worker_count(window.size(), options.threads));
  Vector total = Vector::Zero(static_cast<Eigen::Index>(m));

  for (std::size_t lo = 0; lo < sources.size(); lo += kWindow) {
    const std::size_t len = std::min(kWindow, sources.size() - lo);
    parallel_for_workers(len, options.threads, [&](std::size_t i, unsigned worker) {
      if (!solvers[worker])
        solvers[worker] = std::make_unique<DiffusionSolver>(graph, sink, options.epsilon, options.max_pushes);
      DiffusionSolver& solver = *solvers[worker];
      const SourceMass unit{sources[lo + i], 1.0};
      DiffusionSolver::Stats stats;
      try {
        stats = solver.solve(std::span<const SourceMass>(&unit, 1));
      } catch (const InfeasibleError& e) {
        throw InfeasibleError("LF solve from source " + graph.label(unit.node) + ": " + e.what());
      }
      if (!stats.converged)
        throw std::runtime_error("LF solve from source " + graph.label(unit.node) +
                                 " did not converge within the push budget");
      Contribution& c = window[i];
      c.clear();
      solver.for_each_flow([&](EdgeId e, double f) { c.emplace_back(e, std::abs(f)); });
    });
    for (std::size_t i = 0; i < len; ++i)
      for (const auto& [e, f] : window[i]) total[e] += f;
  }

  EdgeScores out;
  out.method = Method::LF;
  out.values = total / static_cast<double>(sources.size());
  out.params.lambda = options.lambda;
  out.params.epsilon = options.epsilon;
  if (options.sampled_sources) {
    out.params.sampled_sources = true;
    out.params.samples = *options.sampled_sources;
    out.params.seed = options.seed;
  }
  return out;
}

EdgeScores lf_betweenness(const Graph& graph, double lambda, double epsilon) {
  LfOptions options;
  options.lambda = lambda;
  options.epsilon = epsilon;
  return lf_betweenness(graph, options);
}

}  // namespace lfb
