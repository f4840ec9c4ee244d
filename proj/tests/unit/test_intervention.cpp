#include "lfb/generators.hpp"
#include "lfb/graph_io.hpp"
#include "lfb/intervention.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace lfb;

namespace {

Graph ring(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, e);
}

EdgeScores scores_of(std::vector<double> v) {
  EdgeScores s;
  s.values = Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  return s;
}

double total_weight(const Graph& g) {
  double t = 0.0;
  for (const Edge& e : g.edges()) t += e.w;
  return t;
}

}  // namespace

TEST_CASE("top edge selection") {
  const EdgeScores s = scores_of({0.3, 0.9, 0.1, 0.9, 0.5, 0.2, 0.0, 0.4, 0.8, 0.6});
  CHECK(select_top_edges(s, 0.25) == EdgeSet{1, 3});
  CHECK(select_top_edges(s, 0.3) == EdgeSet{1, 3, 8});
  CHECK(select_top_edges(s, 0.0).empty());
  CHECK(select_top_edges(s, 1.0).size() == 10);
  // Ties at the cut resolve to the lower id.
  CHECK(select_top_edges(scores_of({1, 1, 1, 1}), 0.5) == EdgeSet{0, 1});
  CHECK_THROWS(select_top_edges(s, 1.5));
  CHECK_THROWS(select_top_edges(s, -0.1));

  std::vector<double> hundred(100);
  for (int i = 0; i < 100; ++i) hundred[static_cast<std::size_t>(i)] = 100 - i;
  CHECK(select_top_edges(scores_of(hundred), 0.29).size() == 29);
}

TEST_CASE("edge intervention retain factors") {
  const Graph g = ring(6);
  const Graph a = apply_edge_intervention(g, {0, 2}, 0.1);
  CHECK(a.edge(0).w == doctest::Approx(0.1));
  CHECK(a.edge(1).w == 1.0);
  CHECK(a.edge(2).w == doctest::Approx(0.1));
  CHECK(apply_edge_intervention(g, {0, 2}, 1.0).edges() == g.edges());
  CHECK(apply_edge_intervention(g, {5}, 0.01).edge(5).w == doctest::Approx(0.01));
  CHECK(a.edge_count() == g.edge_count());
  CHECK_THROWS(apply_edge_intervention(g, {0}, 0.0));
  CHECK_THROWS(apply_edge_intervention(g, {0}, 1.2));
}

TEST_CASE("uniform intervention") {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 2.0}});
  const Graph q = apply_uniform_intervention(g, 0.25, 0.9);
  CHECK(q.edge(0).w == doctest::Approx(0.775));
  CHECK(q.edge(1).w == doctest::Approx(1.55));
  CHECK(apply_uniform_intervention(g, 1.0, 0.9).edge(0).w == doctest::Approx(0.1));
  CHECK(apply_uniform_intervention(g, 0.0, 0.9).edges() == g.edges());
  CHECK_THROWS(apply_uniform_intervention(g, 1.0, 1.0));
  CHECK_THROWS(apply_uniform_intervention(g, 0.5, 2.5));
}

TEST_CASE("uniform and targeted budgets match on unit weights") {
  const PlantedPartition pp = gen_planted_partition(200, 4, 0.2, 0.01, 3);
  const Graph& g = pp.graph;
  const double w0 = total_weight(g);
  for (double c : {0.05, 0.1, 0.2}) {
    const EdgeSet sel = select_top_edges(hd_edge_scores(g), c);
    const double targeted_removed = w0 - total_weight(apply_edge_intervention(g, sel, 0.1));
    const double uniform_removed = w0 - total_weight(apply_uniform_intervention(g, c, 0.9));
    // Only the floor in the edge count separates the two.
    CHECK(std::abs(targeted_removed - uniform_removed) <= 0.9 + 1e-9);
  }
}

TEST_CASE("node immunisation") {
  std::vector<Edge> e;
  for (int i = 1; i <= 5; ++i) e.push_back({0, i});
  e.push_back({1, 2});
  const Graph star = Graph::from_edges(6, e);
  NodeScores s;
  s.values = star.weighted_degrees();
  const Graph cut = immunize_top_nodes(star, s, 0.2);
  CHECK(cut.edge_count() == 1);
  CHECK(cut.weighted_degree(0) == 0.0);
  CHECK(cut.node_count() == 6);
  CHECK(immunize_top_nodes(star, s, 0.0).edges() == star.edges());
  NodeScores wrong;
  wrong.values = Vector::Zero(3);
  CHECK_THROWS(immunize_top_nodes(star, wrong, 0.5));
}

TEST_CASE("recall and out-link coverage") {
  // Two triangles joined by edge (2,3).
  const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
  const std::vector<int> comm{0, 0, 0, 1, 1, 1};
  CHECK(cut_edge_recall(comm, {3}, g) == 1.0);
  CHECK(cut_edge_recall(comm, {0, 1}, g) == 0.0);
  CHECK_THROWS(cut_edge_recall(std::vector<int>(6, 0), {3}, g));
  CHECK(out_link_coverage({0, 1, 2}, {3}, g) == 1.0);
  CHECK(out_link_coverage({0}, {0}, g) == 0.5);
  CHECK_THROWS(out_link_coverage({0, 1, 2, 3, 4, 5}, {3}, g));
}

TEST_CASE("strategy parsing") {
  CHECK(parse_strategy("ui").mode == PlanMode::Uniform);
  CHECK(parse_strategy("UI").name() == "UI");
  CHECK(parse_strategy("sp").method == Method::SP);
  const Strategy lf = parse_strategy("LF(1/10)");
  CHECK(lf.method == Method::LF);
  CHECK(lf.lambda == doctest::Approx(0.1));
  CHECK(lf.name() == "LF(0.1)");
  CHECK(parse_strategy("lf(0.02)").name() == "LF(0.02)");
  CHECK(parse_strategy("LF").lambda == 1.0);
  const Strategy node = parse_strategy("node:HD");
  CHECK(node.mode == PlanMode::NodeImmunize);
  CHECK(node.name() == "node:HD");
  CHECK_THROWS(parse_strategy("LF(2)"));
  CHECK_THROWS(parse_strategy("LF(0)"));
  CHECK_THROWS(parse_strategy("LF[1]"));
  CHECK_THROWS(parse_strategy("PAGERANK"));
  CHECK_THROWS(parse_strategy("L2FLOW"));
}

TEST_CASE("experiment grid") {
  const PlantedPartition pp = gen_planted_partition(300, 6, 0.25, 0.01, 9);
  const Graph& g = pp.graph;
  ModelSpec model;
  model.kind = ModelKind::Agent;
  model.agent.beta = 0.08;
  model.agent.seed = 4;
  model.trials = 6;
  const InitialCondition init = InitialCondition::random(0.01);
  ExperimentGrid grid;
  grid.strategies = {parse_strategy("SP"), parse_strategy("LF(1/10)"), parse_strategy("UI"), parse_strategy("node:HD")};
  grid.coverages = {0.0, 0.1, 0.3};

  const Graph before = g;
  const InterventionReport r = run_intervention_experiment(g, grid, model, init, 0.1, 2);
  REQUIRE(r.all_ok());
  REQUIRE(r.rows.size() == 12);
  CHECK(g.edges() == before.edges());

  SUBCASE("zero coverage reproduces the baseline") {
    for (const ReportRow& row : r.rows)
      if (row.coverage == 0.0) CHECK(row.metrics.final_size == r.baseline.metrics.final_size);
  }
  SUBCASE("rows follow the grid order") {
    CHECK(r.rows[0].method == "SP");
    CHECK(r.rows[3].method == "LF(0.1)");
    CHECK(r.rows[6].method == "UI");
    CHECK(r.rows[11].method == "node:HD");
    CHECK(r.rows[1].targeted == static_cast<std::size_t>(std::floor(0.1 * static_cast<double>(g.edge_count()))));
    CHECK(r.rows[11].targeted == 90);
  }
  SUBCASE("fingerprints match a direct computation") {
    CHECK(r.score_fingerprints.size() == 3);
    CHECK(r.score_fingerprints.at("SP") == score_fingerprint(sp_betweenness(g).values));
  }
  SUBCASE("thread count does not change the report") {
    const InterventionReport s = run_intervention_experiment(g, grid, model, init, 0.1, 1);
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].metrics.final_size == s.rows[i].metrics.final_size);
  }
  SUBCASE("CSV") {
    std::ostringstream out;
    write_report_csv(out, r);
    CHECK(out.str().rfind("method,coverage,final_size,peak_prevalence,peak_time\nnone,0,", 0) == 0);
  }
}

TEST_CASE("no transmission means equal final sizes everywhere") {
  const PlantedPartition pp = gen_planted_partition(120, 4, 0.3, 0.02, 2);
  ModelSpec model;
  model.kind = ModelKind::Ode;
  model.ode.beta = 0.0;
  model.ode.horizon = 50;
  ExperimentGrid grid{{parse_strategy("HD"), parse_strategy("UI")}, {0.1, 0.5}};
  const InterventionReport r = run_intervention_experiment(pp.graph, grid, model, InitialCondition::random(0.01));
  for (const ReportRow& row : r.rows) CHECK(row.metrics.final_size == r.baseline.metrics.final_size);
}

TEST_CASE("a failing cell is reported without aborting the grid") {
  const PlantedPartition pp = gen_planted_partition(120, 4, 0.3, 0.02, 2);
  ModelSpec model;
  model.kind = ModelKind::Ode;
  model.ode.beta = 0.2;
  model.ode.horizon = 50;
  ExperimentGrid grid{{parse_strategy("HD"), parse_strategy("UI")}, {0.1, 1.0}};
  // With retain 0 the uniform strength is 1, which is invalid at full coverage.
  const InterventionReport r =
      run_intervention_experiment(pp.graph, grid, model, InitialCondition::random(0.01), 1e-300);
  CHECK_FALSE(r.all_ok());
  CHECK_FALSE(r.rows[0].error.has_value());
  CHECK_FALSE(r.rows[1].error.has_value());
  CHECK_FALSE(r.rows[2].error.has_value());
  REQUIRE(r.rows[3].error.has_value());
  std::ostringstream out;
  write_report_csv(out, r);
  CHECK(out.str().find("UI,1,nan,nan,nan") != std::string::npos);

  ExperimentGrid missing{{parse_strategy("SP")}, {0.1}};
  const InterventionReport m =
      run_intervention_experiment(pp.graph, missing, {}, model, InitialCondition::random(0.01));
  REQUIRE(m.rows[0].error.has_value());
  CHECK(m.rows[0].error->find("no scores") != std::string::npos);
}
