#include "lfb/diffusion.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace lfb {

namespace {

Eigen::MatrixXd dense_laplacian(const Graph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : graph.edges()) {
    L(e.u, e.u) += e.w;
    L(e.v, e.v) += e.w;
    L(e.u, e.v) -= e.w;
    L(e.v, e.u) -= e.w;
  }
  return L;
}

// KKT check for  min 1/2 x'Lx + c'x, x >= 0:  x >= 0, g = Lx + c >= -tol,
// |g_i| <= tol wherever x_i > 0.
bool satisfies_kkt(const Eigen::VectorXd& x, const Eigen::VectorXd& g, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) return false;
    if (g[i] < -tol) return false;
    if (x[i] > 0.0 && std::abs(g[i]) > tol) return false;
  }
  return true;
}

// Solves L_SS x_S = -c_S on a support S and zeroes the rest. Returns false
// if the reduced system is singular or the solve is inaccurate.
bool solve_on_support(const Eigen::MatrixXd& L, const Eigen::VectorXd& c, const std::vector<Eigen::Index>& support,
                      Eigen::VectorXd& out) {
  out = Eigen::VectorXd::Zero(c.size());
  if (support.empty()) return true;
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd A(k, k);
  Eigen::VectorXd b(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    b[a] = -c[support[static_cast<std::size_t>(a)]];
    for (Eigen::Index z = 0; z < k; ++z)
      A(a, z) = L(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(z)]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success) return false;
  const Eigen::VectorXd xs = ldlt.solve(b);
  if (!xs.allFinite() || (A * xs - b).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    return false;
  for (Eigen::Index a = 0; a < k; ++a) out[support[static_cast<std::size_t>(a)]] = xs[a];
  return true;
}

// Active-set refinement started from the support of `guess`: coordinates
// that come out negative leave the support, coordinates with a negative
// gradient join it.
bool polish(const Eigen::MatrixXd& L, const Eigen::VectorXd& c, const Eigen::VectorXd& guess, double tol,
            Eigen::VectorXd& out) {
  std::vector<char> in(static_cast<std::size_t>(guess.size()), 0);
  for (Eigen::Index i = 0; i < guess.size(); ++i) in[static_cast<std::size_t>(i)] = guess[i] > 0.0;
  for (int round = 0; round < 4 * static_cast<int>(guess.size()) + 4; ++round) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < guess.size(); ++i)
      if (in[static_cast<std::size_t>(i)]) support.push_back(i);
    if (!solve_on_support(L, c, support, out)) return false;
    bool changed = false;
    for (Eigen::Index i : support) {
      if (out[i] < 0.0) {
        in[static_cast<std::size_t>(i)] = 0;
        changed = true;
      }
    }
    if (changed) continue;
    const Eigen::VectorXd g = L * out + c;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (!in[static_cast<std::size_t>(i)] && g[i] < -tol) {
        in[static_cast<std::size_t>(i)] = 1;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

}  // namespace

DualSolution qp_oracle_solve(const Graph& graph, const DiffusionProblem& problem,
                             const QpOracleOptions& options) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  if (problem.sink.size() != n) throw std::invalid_argument("sink vector length does not match node count");

  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  for (const SourceMass& s : problem.delta) delta[s.node] += s.mass;
  if (delta.sum() > problem.sink.sum() * (1.0 + 1e-12))
    throw InfeasibleError("total source mass exceeds total sink capacity");

  const Eigen::MatrixXd L = dense_laplacian(graph);
  const Eigen::VectorXd c = problem.sink - delta;
  const double lipschitz = std::max(1e-12, 2.0 * graph.weighted_degrees().maxCoeff());
  const double step = 1.0 / lipschitz;
  // Optimality is declared well inside the caller's tolerance.
  const double kkt_tol = std::min(1e-12, problem.epsilon * 1e-3);

  DualSolution out;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = x;
  Eigen::VectorXd candidate;
  double t = 1.0;
  bool done = false;

  if (satisfies_kkt(x, c, kkt_tol)) done = true;
  for (std::size_t it = 0; !done && it < options.max_iterations; ++it) {
    // Accelerated projected gradient with adaptive restart.
    const Eigen::VectorXd g = L * y + c;
    const Eigen::VectorXd next = (y - step * g).cwiseMax(0.0);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if ((y - next).dot(next - x) > 0.0) {
      y = next;
      t = 1.0;
    } else {
      y = next + ((t - 1.0) / t_next) * (next - x);
      t = t_next;
    }
    x = next;
    out.pushes = it + 1;

    if ((it + 1) % options.polish_every == 0) {
      if (polish(L, c, x, kkt_tol, candidate) && satisfies_kkt(candidate, L * candidate + c, kkt_tol)) {
        x = candidate;
        done = true;
      }
    }
  }
  if (!done) throw std::runtime_error("QP oracle did not converge within its iteration budget");

  out.x = x;
  out.flow = flow_from_dual(graph, x);
  out.converged = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (x[i] > 0.0) out.touched.push_back(static_cast<NodeId>(i));
  return out;
}

}  // namespace lfb
