#include "lfb/centrality.hpp"

#include <algorithm>
#include <cmath>

namespace lfb {

EdgeScores hd_edge_scores(const Graph& graph) {
  EdgeScores out;
  out.method = Method::HD;
  out.values.resize(static_cast<Eigen::Index>(graph.edge_count()));
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    out.values[static_cast<Eigen::Index>(i)] = std::max(graph.weighted_degree(e.u), graph.weighted_degree(e.v));
  }
  return out;
}

Vector eigenvector_centrality(const Graph& graph, double tol, std::size_t max_iter) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  if (n == 0 || !is_connected(graph))
    throw std::invalid_argument("eigenvector centrality requires a connected graph");
  // The +I shift keeps the iteration from oscillating on bipartite graphs
  // without changing the dominant eigenvector.
  Vector x = Vector::Ones(n);
  Vector y(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    y = x;
    for (const Edge& e : graph.edges()) {
      y[e.u] += e.w * x[e.v];
      y[e.v] += e.w * x[e.u];
    }
    y /= y.cwiseAbs().maxCoeff();
    const double change = (y - x).cwiseAbs().maxCoeff();
    x.swap(y);
    if (change <= tol) return x;
  }
  throw std::runtime_error("eigenvector power iteration did not converge in " + std::to_string(max_iter) +
                           " iterations");
}

EdgeScores eg_edge_scores(const Graph& graph, double tol, std::size_t max_iter) {
  const Vector x = eigenvector_centrality(graph, tol, max_iter);
  EdgeScores out;
  out.method = Method::EG;
  out.values.resize(static_cast<Eigen::Index>(graph.edge_count()));
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    out.values[static_cast<Eigen::Index>(i)] = std::max(x[e.u], x[e.v]);
  }
  out.params.epsilon = tol;
  return out;
}

NodeScores node_scores_from_edges(const Graph& graph, const EdgeScores& scores) {
  if (static_cast<std::size_t>(scores.values.size()) != graph.edge_count())
    throw std::invalid_argument("edge score length does not match edge count");
  NodeScores out;
  out.method = scores.method;
  out.params = scores.params;
  out.values = Vector::Zero(static_cast<Eigen::Index>(graph.node_count()));
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    out.values[e.u] += scores.values[static_cast<Eigen::Index>(i)];
    out.values[e.v] += scores.values[static_cast<Eigen::Index>(i)];
  }
  return out;
}

}  // namespace lfb
