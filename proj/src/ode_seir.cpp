#include "lfb/epidemic.hpp"

#include "lfb/graph_io.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lfb {

InitialCondition InitialCondition::cluster(NodeSet nodes, double fraction) {
  InitialCondition init;
  init.mode = Mode::ClusterSeed;
  init.nodes = make_node_set(std::move(nodes));
  init.fraction = fraction;
  return init;
}

InitialCondition InitialCondition::random(double fraction, std::optional<std::uint64_t> seed) {
  InitialCondition init;
  init.mode = Mode::RandomFraction;
  init.fraction = fraction;
  init.seed = seed;
  return init;
}

CurveMetrics curve_metrics(const EpidemicCurve& curve) {
  if (curve.size() == 0) throw std::invalid_argument("empty epidemic curve");
  CurveMetrics m;
  m.peak_prevalence = curve.I[0];
  m.peak_time = curve.t[0];
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (curve.I[k] > m.peak_prevalence) {
      m.peak_prevalence = curve.I[k];
      m.peak_time = curve.t[k];
    }
  }
  m.final_size = curve.R.back();
  return m;
}

namespace {

using Array = Eigen::ArrayXd;

struct SeirState {
  Array S, E, I, R;
};

struct Derivative {
  Array dS, dE, dI, dR;
};

void check_ode_params(const OdeSeirParams& p) {
  if (!(p.beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(p.sigma > 0.0) || !(p.gamma > 0.0)) throw std::invalid_argument("sigma and gamma must be positive");
  if (!(p.dt > 0.0) || p.dt > 0.5) throw std::invalid_argument("dt must lie in (0, 0.5]");
  if (!(p.horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
}

Array initial_infectious_fraction(const Graph& graph, const InitialCondition& init) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  Array frac = Array::Zero(n);
  auto check = [](double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("initial fractions must lie in [0, 1]");
  };
  auto check_node = [&](NodeId v) {
    if (v < 0 || v >= n) throw std::out_of_range("initial node id out of range");
  };
  switch (init.mode) {
    case InitialCondition::Mode::ClusterSeed:
      check(init.fraction);
      for (NodeId v : init.nodes) {
        check_node(v);
        frac[v] = init.fraction;
      }
      break;
    case InitialCondition::Mode::RandomFraction:
      check(init.fraction);
      frac.setConstant(init.fraction);
      break;
    case InitialCondition::Mode::Explicit:
      for (auto [v, f] : init.fractions) {
        check_node(v);
        check(f);
        frac[v] = f;
      }
      break;
  }
  return frac;
}

}  // namespace

EpidemicCurve simulate_ode_seir(const Graph& graph, const OdeSeirParams& params, const InitialCondition& init) {
  check_ode_params(params);
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  if (n == 0) throw std::invalid_argument("empty graph");

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * graph.edge_count() + static_cast<std::size_t>(n));
  for (const Edge& e : graph.edges()) {
    trip.emplace_back(e.u, e.v, e.w);
    trip.emplace_back(e.v, e.u, e.w);
  }
  if (params.self_mixing)
    for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(i, i, 1.0);
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());

  const Array N = graph.populations().array();
  const double total = N.sum();
  const Array inv_N = N.inverse();

  SeirState y;
  y.I = initial_infectious_fraction(graph, init) * N;
  y.S = N - y.I;
  y.E = Array::Zero(n);
  y.R = Array::Zero(n);

  const double beta = params.beta;
  const double sigma = params.sigma;
  const double gamma = params.gamma;
  auto rhs = [&](const SeirState& s) {
    const Eigen::VectorXd prevalence = (s.I * inv_N).matrix();
    const Array force = beta * (A * prevalence).array();
    Derivative d;
    d.dS = -force * s.S;
    d.dE = force * s.S - sigma * s.E;
    d.dI = sigma * s.E - gamma * s.I;
    d.dR = gamma * s.I;
    return d;
  };
  auto advance = [](const SeirState& s, const Derivative& d, double h) {
    return SeirState{s.S + h * d.dS, s.E + h * d.dE, s.I + h * d.dI, s.R + h * d.dR};
  };

  EpidemicCurve curve;
  curve.population = total;
  auto record = [&](double t) {
    curve.t.push_back(t);
    curve.S.push_back(y.S.sum() / total);
    curve.E.push_back(y.E.sum() / total);
    curve.I.push_back(y.I.sum() / total);
    curve.R.push_back(y.R.sum() / total);
  };

  const auto steps = static_cast<std::size_t>(std::llround(params.horizon / params.dt));
  const double h = params.dt;
  record(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const Derivative k1 = rhs(y);
    const Derivative k2 = rhs(advance(y, k1, 0.5 * h));
    const Derivative k3 = rhs(advance(y, k2, 0.5 * h));
    const Derivative k4 = rhs(advance(y, k3, h));
    const double w = h / 6.0;
    y.S += w * (k1.dS + 2.0 * k2.dS + 2.0 * k3.dS + k4.dS);
    y.E += w * (k1.dE + 2.0 * k2.dE + 2.0 * k3.dE + k4.dE);
    y.I += w * (k1.dI + 2.0 * k2.dI + 2.0 * k3.dI + k4.dI);
    y.R += w * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
    const double lowest = std::min({(y.S * inv_N).minCoeff(), (y.E * inv_N).minCoeff(),
                                    (y.I * inv_N).minCoeff(), (y.R * inv_N).minCoeff()});
    if (lowest < -1e-9)
      throw IntegrationError("negative compartment at t = " + format_real(static_cast<double>(k) * h) +
                               "; use a smaller dt");
    record(static_cast<double>(k) * h);
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const EpidemicCurve& curve) {
  out << "t,S,E,I,R\n";
  for (std::size_t k = 0; k < curve.size(); ++k)
    out << format_real(curve.t[k]) << ',' << format_real(curve.S[k]) << ',' << format_real(curve.E[k]) << ','
        << format_real(curve.I[k]) << ',' << format_real(curve.R[k]) << '\n';
}

}  // namespace lfb
