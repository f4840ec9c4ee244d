#pragma once

#include "lfb/graph.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace lfb {

/// Source mass exceeds what the sinks of its component can absorb.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceMass {
  NodeId node;
  double mass;
};

/**
 * l2 flow diffusion: route source mass `delta` along edges so that every node
 * ends with at most `sink(u)`, at minimum weighted squared flow. The solver
 * works on the dual
 *
 *   minimize 1/2 x'Lx + (T - delta)'x  subject to x >= 0,
 *
 * whose optimum induces the flows f(u,v) = w(u,v) (x(u) - x(v)).
 */
struct DiffusionProblem {
  std::vector<SourceMass> delta;
  Vector sink;
  double epsilon = 1e-6;
  std::uint64_t max_pushes = 1'000'000'000;
  /// Record the dual objective after every coordinate step (small graphs only).
  bool record_objective = false;
};

struct DualSolution {
  Vector x;
  /// Signed per-edge flow relative to the canonical (u < v) orientation.
  Vector flow;
  std::uint64_t pushes = 0;
  NodeSet touched;
  bool converged = false;
  /// Objective at x = 0 followed by its value after every push.
  std::vector<double> objective_trace;
};

/// T(v) = d(v) / (lambda vol(G)). Requires lambda in (0, 1].
Vector sink_capacities(const Graph& graph, double lambda);

/// Unit mass on `source`, sinks from the lambda rule.
DiffusionProblem single_source_problem(const Graph& graph, NodeId source, double lambda,
                                       double epsilon = 1e-6);

/// Push-based coordinate descent on the dual. Flags (does not throw) when the
/// push budget runs out; throws InfeasibleError when some component holds more
/// source mass than sink capacity.
DualSolution solve_l2_diffusion(const Graph& graph, const DiffusionProblem& problem);

/// Dense projected-gradient solve of the same dual followed by an exact
/// active-set solve on the detected support. Verification oracle; intended for
/// a few hundred nodes at most. Throws std::runtime_error on non-convergence.
struct QpOracleOptions {
  std::size_t max_iterations = 2'000'000;
  std::size_t polish_every = 200;
};
DualSolution qp_oracle_solve(const Graph& graph, const DiffusionProblem& problem,
                             const QpOracleOptions& options = {});

Vector flow_from_dual(const Graph& graph, const Vector& x);

/// Delta - T - Lx.
Vector dual_residual(const Graph& graph, const DiffusionProblem& problem, const Vector& x);
double dual_objective(const Graph& graph, const DiffusionProblem& problem, const Vector& x);
/// Mass left at each node after routing `flow`: delta + B'f.
Vector settled_mass(const Graph& graph, const DiffusionProblem& problem, const Vector& flow);

std::size_t nonzero_flow_edge_count(const DualSolution& solution, double threshold = 0.0);

/// Debug dumps: "node,x" and "u,v,flow" with labels.
void write_dual_csv(std::ostream& nodes, std::ostream& edges, const Graph& graph,
                    const DualSolution& solution);

/**
 * Reusable workspace for many single-source solves against one graph and one
 * sink vector. Per-solve cost is proportional to the touched region, not to
 * the graph size. Not thread-safe; use one instance per worker.
 */
class DiffusionSolver {
 public:
  DiffusionSolver(const Graph& graph, Vector sink, double epsilon,
                  std::uint64_t max_pushes = 1'000'000'000);

  struct Stats {
    std::uint64_t pushes = 0;
    bool converged = false;
  };

  Stats solve(std::span<const SourceMass> delta);

  /// Called after every coordinate step; for instrumentation in tests.
  void set_push_hook(std::function<void()> hook) { hook_ = std::move(hook); }

  /// Nodes whose mass or dual value changed during the last solve, in the
  /// order they were first reached.
  const std::vector<NodeId>& touched() const { return touched_; }
  double x(NodeId v) const { return x_[static_cast<std::size_t>(v)]; }

  /// Calls fn(edge_id, flow) once for every edge with an endpoint of positive
  /// dual value; all other edges carry exactly zero flow.
  template <typename Fn>
  void for_each_flow(Fn&& fn) const {
    for (NodeId a : touched_) {
      const double xa = x_[static_cast<std::size_t>(a)];
      if (xa <= 0.0) continue;
      for (const Incidence& inc : graph_->incident(a)) {
        const double xb = x_[static_cast<std::size_t>(inc.node)];
        if (xb > 0.0 && inc.node < a) continue;
        const double f = a < inc.node ? inc.w * (xa - xb) : inc.w * (xb - xa);
        fn(inc.edge, f);
      }
    }
  }

 private:
  void reset();

  const Graph* graph_;
  Vector sink_;
  double epsilon_;
  std::uint64_t max_pushes_;
  std::vector<double> x_;
  std::vector<double> mass_;
  std::vector<char> seen_;
  std::vector<char> queued_;
  std::vector<NodeId> touched_;
  std::vector<NodeId> ring_;
  std::function<void()> hook_;
  std::vector<int> component_;
  std::vector<double> component_capacity_;
};

}  // namespace lfb
