#include "lfb/centrality.hpp"
#include "lfb/parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace lfb {

namespace {

Eigen::SparseMatrix<double> sparse_laplacian(const Graph& graph) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * graph.edge_count());
  for (const Edge& e : graph.edges()) {
    t.emplace_back(e.u, e.u, e.w);
    t.emplace_back(e.v, e.v, e.w);
    t.emplace_back(e.u, e.v, -e.w);
    t.emplace_back(e.v, e.u, -e.w);
  }
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(t.begin(), t.end());
  return L;
}

// Moore-Penrose pseudoinverse of a connected graph's Laplacian:
// (L + J/n)^{-1} - J/n.
Eigen::MatrixXd pseudoinverse_dense(const Graph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  Eigen::MatrixXd A = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  for (const Edge& e : graph.edges()) {
    A(e.u, e.u) += e.w;
    A(e.v, e.v) += e.w;
    A(e.u, e.v) -= e.w;
    A(e.v, e.u) -= e.w;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Laplacian factorisation failed");
  Eigen::MatrixXd C = llt.solve(Eigen::MatrixXd::Identity(n, n));
  C.array() -= 1.0 / static_cast<double>(n);
  return C;
}

Eigen::MatrixXd pseudoinverse_cg(const Graph& graph, double tol, unsigned threads) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const Eigen::SparseMatrix<double> L = sparse_laplacian(graph);
  Eigen::MatrixXd C(n, n);
  std::vector<char> failed(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t s) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(std::max<Eigen::Index>(100 * n, 1000));
    cg.compute(L);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(n, -1.0 / static_cast<double>(n));
    b[static_cast<Eigen::Index>(s)] += 1.0;
    Eigen::VectorXd y = cg.solve(b);
    if (cg.info() != Eigen::Success) failed[s] = 1;
    y.array() -= y.mean();
    C.col(static_cast<Eigen::Index>(s)) = y;
  });
  if (std::find(failed.begin(), failed.end(), 1) != failed.end())
    throw std::runtime_error("conjugate gradient did not converge for some pseudoinverse column");
  return C;
}

}  // namespace

EdgeScores cf_betweenness(const Graph& graph, const CfOptions& options) {
  const std::size_t n = graph.node_count();
  if (n > options.size_limit)
    throw std::length_error("current-flow betweenness refused: " + std::to_string(n) +
                            " nodes exceeds the size limit of " + std::to_string(options.size_limit) +
                            " (it needs a dense |V|x|V| pseudoinverse); use LF or sp instead, or raise the limit");
  if (n == 0 || !is_connected(graph))
    throw std::invalid_argument("current-flow betweenness requires a connected graph");

  const Eigen::MatrixXd C = n <= options.dense_limit ? pseudoinverse_dense(graph)
                                                     : pseudoinverse_cg(graph, options.cg_tolerance, options.threads);

  EdgeScores out;
  out.method = Method::CF;
  out.values = Vector::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  // tau_st(e) = a_s - a_t with a_s = w (C(u,s) - C(v,s)); the ordered-pair
  // sum of |a_s - a_t| follows from the sorted a in O(n log n).
  parallel_for(graph.edge_count(), options.threads, [&](std::size_t id) {
    const Edge& e = graph.edges()[id];
    std::vector<double> a(n);
    for (std::size_t s = 0; s < n; ++s)
      a[s] = e.w * (C(e.u, static_cast<Eigen::Index>(s)) - C(e.v, static_cast<Eigen::Index>(s)));
    std::sort(a.begin(), a.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      sum += a[j] * (2.0 * static_cast<double>(j) - static_cast<double>(n - 1));
    out.values[static_cast<Eigen::Index>(id)] = 2.0 * sum;
  });
  if (options.normalized) {
    out.values /= static_cast<double>(n) * static_cast<double>(n);
    out.params.normalized = true;
  }
  return out;
}

EdgeScores l2_flow_betweenness_exact(const Graph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0 || !is_connected(graph))
    throw std::invalid_argument("exact pair mode requires a connected graph");
  const std::size_t m = graph.edge_count();
  const Eigen::SparseMatrix<double> L = sparse_laplacian(graph);

  std::vector<Vector> per_sink(n);
  for (std::size_t t = 0; t < n; ++t) {
    // Ground the sink: y(t) = 0 and L_{-t} y_{-t} = 1_s.
    std::vector<Eigen::Index> keep;
    for (std::size_t v = 0; v < n; ++v)
      if (v != t) keep.push_back(static_cast<Eigen::Index>(v));
    std::vector<Eigen::Index> pos(n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[static_cast<std::size_t>(keep[i])] = static_cast<Eigen::Index>(i);
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < L.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(L, k); it; ++it) {
        const auto r = pos[static_cast<std::size_t>(it.row())];
        const auto c = pos[static_cast<std::size_t>(it.col())];
        if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
      }
    const auto k = static_cast<Eigen::Index>(keep.size());
    Eigen::SparseMatrix<double> grounded(k, k);
    grounded.setFromTriplets(trip.begin(), trip.end());

    Vector acc = Vector::Zero(static_cast<Eigen::Index>(m));
    if (k > 0) {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(grounded);
      if (ldlt.info() != Eigen::Success) throw std::runtime_error("grounded Laplacian factorisation failed");
      Vector y(static_cast<Eigen::Index>(n));
      for (std::size_t s = 0; s < n; ++s) {
        if (s == t) continue;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
        rhs[pos[s]] = 1.0;
        const Eigen::VectorXd sol = ldlt.solve(rhs);
        for (std::size_t v = 0; v < n; ++v) y[static_cast<Eigen::Index>(v)] = v == t ? 0.0 : sol[pos[v]];
        for (std::size_t id = 0; id < m; ++id) {
          const Edge& e = graph.edges()[id];
          acc[static_cast<Eigen::Index>(id)] += std::abs(e.w * (y[e.u] - y[e.v]));
        }
      }
    }
    per_sink[t] = std::move(acc);
  }

  EdgeScores out;
  out.method = Method::L2Flow;
  out.values = Vector::Zero(static_cast<Eigen::Index>(m));
  for (const Vector& v : per_sink) out.values += v;
  out.values /= static_cast<double>(n) * static_cast<double>(n);
  out.params.normalized = true;
  return out;
}

EdgeScores l2_flow_betweenness_sampled(const Graph& graph, const DiffusionSampler& sampler,
                                       std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  Rng rng(seed);
  EdgeScores out;
  out.method = Method::L2Flow;
  out.values = Vector::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  for (std::size_t i = 0; i < samples; ++i) {
    const DiffusionProblem problem = sampler(rng);
    const DualSolution sol = solve_l2_diffusion(graph, problem);
    if (!sol.converged) throw std::runtime_error("sampled diffusion did not converge");
    out.values += sol.flow.cwiseAbs();
  }
  out.values /= static_cast<double>(samples);
  out.params.samples = samples;
  out.params.seed = seed;
  return out;
}

}  // namespace lfb
