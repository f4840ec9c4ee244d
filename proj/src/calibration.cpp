#include "lfb/epidemic.hpp"

#include "lfb/graph_io.hpp"

#include <cmath>
#include <stdexcept>

namespace lfb {

BetaEstimate beta_from_r0(const Graph& graph, double r0) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw std::invalid_argument("empty graph");
  if (!(r0 >= 0.0)) throw std::invalid_argument("R0 must be nonnegative");
  double k1 = 0.0;
  double k2 = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto k = static_cast<double>(graph.degree(static_cast<NodeId>(v)));
    k1 += k;
    k2 += k * k;
  }
  k1 /= static_cast<double>(n);
  k2 /= static_cast<double>(n);
  if (!(k2 > k1)) throw std::invalid_argument("<k^2> must exceed <k> (e.g. not a perfect matching)");
  BetaEstimate out;
  out.beta = r0 * k1 / (k2 - k1);
  out.exceeds_one = out.beta > 1.0;
  return out;
}

ModelOutcome run_model(const Graph& graph, const ModelSpec& spec, const InitialCondition& init) {
  ModelOutcome out;
  if (spec.kind == ModelKind::Ode) {
    out.curve = simulate_ode_seir(graph, spec.ode, init);
    out.metrics = curve_metrics(out.curve);
    return out;
  }
  EnsembleResult ens = ensemble_agent_seir(graph, spec.agent, init, spec.trials, spec.threads);
  out.metrics.final_size = ens.mean_final_size;
  out.metrics.peak_prevalence = ens.mean_peak_prevalence;
  out.metrics.peak_time = ens.mean_peak_time;
  out.curve = std::move(ens.mean);
  out.trials = std::move(ens.trials);
  return out;
}

CalibrationResult calibrate_beta_final_size(const Graph& graph, const ModelSpec& spec, const InitialCondition& init,
                                            double target, const CalibrationOptions& options) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target final size must lie in (0, 1)");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (spec.kind == ModelKind::Agent && spec.trials < options.min_agent_trials)
    throw std::invalid_argument("agent calibration needs at least " + std::to_string(options.min_agent_trials) +
                                " trials per evaluation");
  const auto [lo0, hi0] = options.bracket.value_or(
      spec.kind == ModelKind::Ode ? std::pair{0.0, 10.0} : std::pair{0.0, 1.0});
  if (!(lo0 >= 0.0 && lo0 < hi0)) throw std::invalid_argument("invalid beta bracket");

  ModelSpec work = spec;
  CalibrationResult result;
  auto final_size = [&](double beta) {
    work.set_beta(beta);
    ++result.iterations;
    return run_model(graph, work, init).metrics.final_size;
  };

  double lo = lo0;
  double hi = hi0;
  const double f_lo = final_size(lo);
  if (std::abs(f_lo - target) <= options.tolerance) return {lo, f_lo, result.iterations};
  double f_hi = 0.0;
  for (int shrink = 0;; ++shrink) {
    try {
      f_hi = final_size(hi);
      break;
    } catch (const IntegrationError&) {
      if (shrink == 40) throw;
      hi = lo + 0.5 * (hi - lo);
    }
  }
  if (std::abs(f_hi - target) <= options.tolerance) return {hi, f_hi, result.iterations};
  if (!(f_lo < target && target < f_hi))
    throw std::runtime_error("bracket [" + format_real(lo) + ", " + format_real(hi) +
                             "] does not straddle target " + format_real(target) + ": final sizes " +
                             format_real(f_lo) + " and " + format_real(f_hi));

  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = final_size(mid);
    if (std::abs(f - target) <= options.tolerance) {
      result.beta = mid;
      result.achieved = f;
      return result;
    }
    (f < target ? lo : hi) = mid;
  }
  throw std::runtime_error("calibration did not reach target " + format_real(target) + " within " +
                           std::to_string(options.max_iterations) + " bisection steps");
}

}  // namespace lfb
