#include "lfb/diffusion.hpp"

#include "lfb/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lfb {

Vector sink_capacities(const Graph& graph, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
  if (!(graph.volume() > 0.0)) throw std::invalid_argument("graph has zero volume");
  return graph.weighted_degrees() / (lambda * graph.volume());
}

DiffusionProblem single_source_problem(const Graph& graph, NodeId source, double lambda,
                                       double epsilon) {
  if (source < 0 || static_cast<std::size_t>(source) >= graph.node_count())
    throw std::out_of_range("source node out of range");
  DiffusionProblem p;
  p.delta = {{source, 1.0}};
  p.sink = sink_capacities(graph, lambda);
  p.epsilon = epsilon;
  return p;
}

DiffusionSolver::DiffusionSolver(const Graph& graph, Vector sink, double epsilon,
                                 std::uint64_t max_pushes)
    : graph_(&graph), sink_(std::move(sink)), epsilon_(epsilon), max_pushes_(max_pushes) {
  const auto n = graph.node_count();
  if (static_cast<std::size_t>(sink_.size()) != n)
    throw std::invalid_argument("sink vector length does not match node count");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if ((sink_.array() < 0.0).any()) throw std::invalid_argument("sink capacities must be nonnegative");
  x_.assign(n, 0.0);
  mass_.assign(n, 0.0);
  seen_.assign(n, 0);
  queued_.assign(n, 0);
  ring_.assign(n + 1, 0);
  int count = 0;
  component_ = connected_components(graph, &count);
  component_capacity_.assign(static_cast<std::size_t>(count), 0.0);
  for (std::size_t v = 0; v < n; ++v)
    component_capacity_[static_cast<std::size_t>(component_[v])] += sink_[static_cast<Eigen::Index>(v)];
}

void DiffusionSolver::reset() {
  for (NodeId v : touched_) {
    const auto i = static_cast<std::size_t>(v);
    x_[i] = 0.0;
    mass_[i] = 0.0;
    seen_[i] = 0;
    queued_[i] = 0;
  }
  touched_.clear();
}

DiffusionSolver::Stats DiffusionSolver::solve(std::span<const SourceMass> delta) {
  reset();
  const Graph& g = *graph_;
  const auto n = g.node_count();

  std::vector<std::pair<int, double>> load;
  for (const SourceMass& s : delta) {
    if (s.node < 0 || static_cast<std::size_t>(s.node) >= n) throw std::out_of_range("source node out of range");
    if (!(s.mass >= 0.0)) throw std::invalid_argument("source mass must be nonnegative");
    const int c = component_[static_cast<std::size_t>(s.node)];
    auto it = std::find_if(load.begin(), load.end(), [c](const auto& p) { return p.first == c; });
    if (it == load.end()) load.emplace_back(c, s.mass);
    else it->second += s.mass;
  }
  for (const auto& [c, m] : load) {
    const double cap = component_capacity_[static_cast<std::size_t>(c)];
    if (m > cap * (1.0 + 1e-12))
      throw InfeasibleError("source mass " + format_real(m) + " exceeds component sink capacity " + format_real(cap));
  }

  // Ring buffer FIFO; a node is queued at most once at a time.
  std::size_t head = 0;
  std::size_t tail = 0;
  const std::size_t cap = ring_.size();
  auto enqueue = [&](NodeId v) {
    queued_[static_cast<std::size_t>(v)] = 1;
    ring_[tail] = v;
    tail = tail + 1 == cap ? 0 : tail + 1;
  };
  auto touch = [&](NodeId v) {
    auto& s = seen_[static_cast<std::size_t>(v)];
    if (!s) {
      s = 1;
      touched_.push_back(v);
    }
  };
  const double* sink = sink_.data();

  std::vector<NodeId> initial;
  for (const SourceMass& s : delta) {
    touch(s.node);
    mass_[static_cast<std::size_t>(s.node)] += s.mass;
    initial.push_back(s.node);
  }
  std::sort(initial.begin(), initial.end());
  for (NodeId v : initial) {
    const auto i = static_cast<std::size_t>(v);
    if (!queued_[i] && mass_[i] - sink[i] > epsilon_) enqueue(v);
  }

  Stats stats;
  while (head != tail) {
    if (stats.pushes >= max_pushes_) return stats;
    const NodeId u = ring_[head];
    head = head + 1 == cap ? 0 : head + 1;
    const auto ui = static_cast<std::size_t>(u);
    queued_[ui] = 0;
    const double r = mass_[ui] - sink[ui];
    const double d = g.weighted_degree(u);
    if (r <= epsilon_ || d <= 0.0) continue;
    const double step = r / d;
    x_[ui] += step;
    mass_[ui] = sink[ui];
    for (const Incidence& inc : g.incident(u)) {
      const auto wi = static_cast<std::size_t>(inc.node);
      if (!seen_[wi]) {
        seen_[wi] = 1;
        touched_.push_back(inc.node);
      }
      mass_[wi] += inc.w * step;
      if (!queued_[wi] && mass_[wi] - sink[wi] > epsilon_) enqueue(inc.node);
    }
    ++stats.pushes;
    if (hook_) hook_();
  }
  stats.converged = true;
  return stats;
}

DualSolution solve_l2_diffusion(const Graph& graph, const DiffusionProblem& problem) {
  DiffusionSolver solver(graph, problem.sink, problem.epsilon, problem.max_pushes);
  DualSolution out;
  out.x = Vector::Zero(static_cast<Eigen::Index>(graph.node_count()));
  if (problem.record_objective) {
    solver.set_push_hook([&] {
      for (NodeId v : solver.touched()) out.x[v] = solver.x(v);
      out.objective_trace.push_back(dual_objective(graph, problem, out.x));
    });
    out.objective_trace.push_back(0.0);
  }
  const auto stats = solver.solve(problem.delta);
  for (NodeId v : solver.touched()) out.x[v] = solver.x(v);
  out.flow = Vector::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  solver.for_each_flow([&](EdgeId e, double f) { out.flow[e] = f; });
  out.pushes = stats.pushes;
  out.converged = stats.converged;
  out.touched = make_node_set(solver.touched());
  return out;
}

Vector flow_from_dual(const Graph& graph, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != graph.node_count())
    throw std::invalid_argument("dual vector length does not match node count");
  Vector f(static_cast<Eigen::Index>(graph.edge_count()));
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    f[static_cast<Eigen::Index>(i)] = e.w * (x[e.u] - x[e.v]);
  }
  return f;
}

namespace {

Vector laplacian_times(const Graph& graph, const Vector& x) {
  Vector y = Vector::Zero(x.size());
  for (const Edge& e : graph.edges()) {
    const double f = e.w * (x[e.u] - x[e.v]);
    y[e.u] += f;
    y[e.v] -= f;
  }
  return y;
}

Vector dense_delta(const Graph& graph, const DiffusionProblem& problem) {
  Vector d = Vector::Zero(static_cast<Eigen::Index>(graph.node_count()));
  for (const SourceMass& s : problem.delta) d[s.node] += s.mass;
  return d;
}

}  // namespace

Vector dual_residual(const Graph& graph, const DiffusionProblem& problem, const Vector& x) {
  return dense_delta(graph, problem) - problem.sink - laplacian_times(graph, x);
}

double dual_objective(const Graph& graph, const DiffusionProblem& problem, const Vector& x) {
  double quad = 0.0;
  for (const Edge& e : graph.edges()) {
    const double diff = x[e.u] - x[e.v];
    quad += e.w * diff * diff;
  }
  return 0.5 * quad + (problem.sink - dense_delta(graph, problem)).dot(x);
}

Vector settled_mass(const Graph& graph, const DiffusionProblem& problem, const Vector& flow) {
  Vector m = dense_delta(graph, problem);
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    m[e.u] -= flow[static_cast<Eigen::Index>(i)];
    m[e.v] += flow[static_cast<Eigen::Index>(i)];
  }
  return m;
}

std::size_t nonzero_flow_edge_count(const DualSolution& solution, double threshold) {
  return static_cast<std::size_t>((solution.flow.array().abs() > threshold).count());
}

void write_dual_csv(std::ostream& nodes, std::ostream& edges, const Graph& graph,
                    const DualSolution& solution) {
  nodes << "node,x\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v)
    nodes << graph.label(static_cast<NodeId>(v)) << ',' << format_real(solution.x[static_cast<Eigen::Index>(v)]) << '\n';
  edges << "u,v,flow\n";
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    edges << graph.label(e.u) << ',' << graph.label(e.v) << ',' << format_real(solution.flow[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

}  // namespace lfb
