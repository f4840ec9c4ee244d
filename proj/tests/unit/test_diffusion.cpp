#include "lfb/diffusion.hpp"
#include "lfb/generators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace lfb;

namespace {

Graph k2() { return Graph::from_edges(2, std::vector<Edge>{{0, 1}}); }
Graph path3() { return Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("sink capacities") {
  CHECK(sink_capacities(k2(), 1.0) == Vector::Constant(2, 0.5));
  CHECK(sink_capacities(k2(), 0.5) == Vector::Constant(2, 1.0));
  Rng rng(2);
  const Graph g = oracle::random_connected(17, 0.3, rng, true);
  CHECK(sink_capacities(g, 1.0).sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sink_capacities(g, 0.25).sum() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS(sink_capacities(g, 0.0));
  CHECK_THROWS(sink_capacities(g, 1.5));
}

TEST_CASE("K2 worked example satisfies the KKT conditions by hand") {
  // Minimise 1/2 (x0 - x1)^2 + (1/2 - 1) x0 + (1/2) x1 over x >= 0:
  // x1 = 0 is active and x0 = 1/2 zeroes the free gradient x0 - 1/2.
  DiffusionProblem p = single_source_problem(k2(), 0, 1.0, 1e-8);
  const DualSolution s = solve_l2_diffusion(k2(), p);
  REQUIRE(s.converged);
  CHECK(s.x[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(s.x[1] == 0.0);
  CHECK(s.flow[0] == doctest::Approx(0.5).epsilon(1e-8));
  const Vector r = dual_residual(k2(), p, s.x);
  CHECK(std::abs(r[0]) <= 1e-8);
  CHECK(r[1] <= 0.0);
  CHECK(nonzero_flow_edge_count(s) == 1);

  const DualSolution o = qp_oracle_solve(k2(), p);
  CHECK(o.x[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(o.x[1] == 0.0);
}

TEST_CASE("source absorbed by its own sink gives the zero solution") {
  Rng rng(8);
  const Graph g = oracle::random_connected(12, 0.3, rng);
  for (NodeId v = 0; v < 12; ++v) {
    const double lambda = g.weighted_degree(v) / g.volume();
    const DiffusionProblem p = single_source_problem(g, v, lambda);
    const DualSolution s = solve_l2_diffusion(g, p);
    CHECK(s.converged);
    CHECK(s.x.isZero(0.0));
    CHECK(s.flow.isZero(0.0));
    CHECK(s.pushes == 0);
    CHECK(nonzero_flow_edge_count(s) == 0);
    CHECK(qp_oracle_solve(g, p).x.isZero(0.0));
  }
}

TEST_CASE("path of three matches the QP oracle") {
  const DiffusionProblem p = single_source_problem(path3(), 0, 1.0, 1e-9);
  CHECK(p.sink[0] == 0.25);
  CHECK(p.sink[1] == 0.5);
  const DualSolution s = solve_l2_diffusion(path3(), p);
  const DualSolution o = qp_oracle_solve(path3(), p);
  for (int e = 0; e < 2; ++e) CHECK(std::abs(s.flow[e] - o.flow[e]) <= 1e-6);
  // Hand solution: node 1 keeps 1/2, node 2 receives 1/4 through edge (1,2).
  CHECK(o.flow[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(o.flow[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("flow_from_dual") {
  const Graph g = path3();
  CHECK(flow_from_dual(g, Vector::Zero(3)).isZero(0.0));
  CHECK(flow_from_dual(g, Vector::Constant(3, 2.5)).isZero(0.0));
  Vector x(2);
  x << 0.5, 0.0;
  CHECK(flow_from_dual(k2(), x)[0] == 0.5);
  CHECK_THROWS(flow_from_dual(g, x));
  const Graph w = Graph::from_edges(2, std::vector<Edge>{{0, 1, 3.0}});
  CHECK(flow_from_dual(w, x)[0] == 1.5);
}

TEST_CASE("random instances: oracle agreement, feasibility and slackness") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(uniform_below(rng, 20));
    const Graph g = oracle::random_connected(n, 0.25, rng, trial % 2 == 1);
    const NodeId src = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    const double lambda = std::array{1.0, 0.5, 0.1}[trial % 3];
    const DiffusionProblem p = single_source_problem(g, src, lambda);
    const DualSolution s = solve_l2_diffusion(g, p);
    REQUIRE(s.converged);
    const DualSolution o = qp_oracle_solve(g, p);
    CHECK(std::abs(dual_objective(g, p, s.x) - dual_objective(g, p, o.x)) <= 1e-8);

    const Vector r = dual_residual(g, p, s.x);
    const Vector settled = settled_mass(g, p, s.flow);
    for (NodeId v = 0; v < n; ++v) {
      CHECK(s.x[v] >= 0.0);
      CHECK(r[v] <= p.epsilon);
      CHECK(settled[v] <= p.sink[v] + p.epsilon);
      if (s.x[v] > 0.0) CHECK(std::abs(r[v]) <= p.epsilon);
    }
    CHECK(flow_from_dual(g, s.x) == s.flow);
    if (trial % 2 == 0) {
      CHECK(nonzero_flow_edge_count(s) < 2.0 * lambda * static_cast<double>(g.edge_count()));
    } else {
      // Weighted graphs: the edge count can reach 2 lambda |E|; the volume of
      // the saturated support stays below lambda vol.
      double support = 0.0;
      for (NodeId v = 0; v < n; ++v)
        if (s.x[v] > 0.0) support += g.weighted_degree(v);
      CHECK(support < lambda * g.volume());
    }
  }
}

TEST_CASE("multi-source instance and explicit sinks") {
  Rng rng(44);
  const Graph g = oracle::random_connected(20, 0.2, rng, true);
  DiffusionProblem p;
  p.delta = {{2, 3.0}, {9, 1.5}, {2, 0.5}};
  p.sink = Vector::Constant(20, 0.4);
  const DualSolution s = solve_l2_diffusion(g, p);
  const DualSolution o = qp_oracle_solve(g, p);
  CHECK(std::abs(dual_objective(g, p, s.x) - dual_objective(g, p, o.x)) <= 1e-8);
  CHECK((s.x - o.x).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("dual objective never increases across pushes") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_connected(25, 0.15, rng, true);
    DiffusionProblem p = single_source_problem(g, 0, 0.3, 1e-9);
    p.record_objective = true;
    const DualSolution s = solve_l2_diffusion(g, p);
    REQUIRE(s.objective_trace.size() == s.pushes + 1);
    double prev = 0.0;
    for (double v : s.objective_trace) {
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("errors and non-convergence") {
  const Graph g = path3();
  DiffusionProblem p = single_source_problem(g, 0, 1.0);
  p.delta[0].mass = 2.0;
  CHECK_THROWS_AS(solve_l2_diffusion(g, p), InfeasibleError);

  // Two components: mass on the small one exceeds that component's share.
  const Graph split = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {2, 3}, {3, 4}});
  CHECK_THROWS_AS(solve_l2_diffusion(split, single_source_problem(split, 0, 1.0)), InfeasibleError);

  DiffusionProblem q = single_source_problem(g, 0, 1.0, 1e-12);
  q.max_pushes = 3;
  const DualSolution s = solve_l2_diffusion(g, q);
  CHECK_FALSE(s.converged);
  CHECK(s.pushes == 3);

  DiffusionProblem bad = single_source_problem(g, 0, 1.0);
  bad.epsilon = 0.0;
  CHECK_THROWS(solve_l2_diffusion(g, bad));
}

TEST_CASE("solver workspace reuse gives identical results") {
  const PlantedPartition pp = gen_planted_partition(300, 6, 0.2, 0.01, 5);
  const Vector sink = sink_capacities(pp.graph, 0.2);
  DiffusionSolver solver(pp.graph, sink, 1e-6);
  for (NodeId v : {3, 150, 3, 299}) {
    const SourceMass m{v, 1.0};
    solver.solve({&m, 1});
    Vector x = Vector::Zero(300);
    for (NodeId t : solver.touched()) x[t] = solver.x(t);
    DiffusionProblem p;
    p.delta = {m};
    p.sink = sink;
    const DualSolution fresh = solve_l2_diffusion(pp.graph, p);
    CHECK(x == fresh.x);
  }
}

TEST_CASE("debug CSV dump") {
  const Graph g = path3().with_labels({"a", "b", "c"});
  const DualSolution s = solve_l2_diffusion(g, single_source_problem(g, 0, 1.0, 1e-9));
  std::ostringstream nodes, edges;
  write_dual_csv(nodes, edges, g, s);
  CHECK(nodes.str().rfind("node,x\na,", 0) == 0);
  CHECK(edges.str().rfind("u,v,flow\na,b,", 0) == 0);
}
