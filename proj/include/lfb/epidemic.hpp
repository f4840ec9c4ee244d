#pragma once

#include "lfb/graph.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfb {

/// The fixed ODE step drove a compartment negative.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rates per day. Defaults: latent period 2.5 days, infectious period 5 days.
struct OdeSeirParams {
  double beta = 0.5;
  double sigma = 1.0 / 2.5;
  double gamma = 1.0 / 5.0;
  double dt = 0.05;
  double horizon = 365.0;
  /// Adds A_ii = 1 to the force of infection so a node infects itself.
  bool self_mixing = true;
};

/// Daily probabilities for the discrete-time agent model.
struct AgentSeirParams {
  double beta = 0.05;
  double sigma = 1.0 / 2.5;
  double gamma = 1.0 / 5.0;
  int horizon = 365;
  std::uint64_t seed = 1;
  bool stop_at_extinction = true;
};

struct InitialCondition {
  enum class Mode {
    /// `nodes` are seeded: ODE puts `fraction` of each node's population in
    /// I, the agent model makes each listed node infectious.
    ClusterSeed,
    /// ODE: `fraction` of every population starts in I. Agent: round(fraction
    /// n) (at least one) uniformly drawn nodes start infectious.
    RandomFraction,
    /// Per-node infectious fractions (ODE); nodes with positive fraction are
    /// infectious (agent).
    Explicit,
  };
  Mode mode = Mode::RandomFraction;
  double fraction = 0.001;
  NodeSet nodes;
  std::vector<std::pair<NodeId, double>> fractions;
  /// When set, the random draw uses this seed (same set in every trial);
  /// otherwise it comes from each trial's own stream.
  std::optional<std::uint64_t> seed;

  static InitialCondition cluster(NodeSet nodes, double fraction = 0.001);
  static InitialCondition random(double fraction, std::optional<std::uint64_t> seed = std::nullopt);
};

/// Aggregate compartment fractions over time.
struct EpidemicCurve {
  std::vector<double> t;
  std::vector<double> S, E, I, R;
  /// Agent model only: integer compartment counts per time point.
  std::vector<std::array<std::int64_t, 4>> counts;
  double population = 0.0;
  std::vector<std::string> warnings;

  std::size_t size() const { return t.size(); }
};

struct CurveMetrics {
  double peak_prevalence = 0.0;
  double peak_time = 0.0;
  double final_size = 0.0;
};

/// Peak of I (first time attaining it) and R at the last time point.
CurveMetrics curve_metrics(const EpidemicCurve& curve);

/// Fixed-step RK4 integration of the network SEIR system with coupling through
/// the current edge weights. One point per step, starting at t = 0.
EpidemicCurve simulate_ode_seir(const Graph& graph, const OdeSeirParams& params, const InitialCondition& init);

/// Synchronous daily updates; reproducible from params.seed.
EpidemicCurve simulate_agent_seir(const Graph& graph, const AgentSeirParams& params, const InitialCondition& init);

struct TrialSummary {
  std::uint64_t seed = 0;
  CurveMetrics metrics;
};

struct EnsembleResult {
  EpidemicCurve mean;
  std::vector<TrialSummary> trials;
  double mean_final_size = 0.0;
  double mean_peak_prevalence = 0.0;
  double mean_peak_time = 0.0;
};

/// Seed of trial i derived from the master seed; trial 0 uses it unchanged.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// Runs `trials` agent simulations. Shorter curves are padded with their
/// terminal state before averaging.
EnsembleResult ensemble_agent_seir(const Graph& graph, const AgentSeirParams& params,
                                   const InitialCondition& init, std::size_t trials, unsigned threads = 1);

struct BetaEstimate {
  double beta = 0.0;
  /// beta > 1 cannot be used as a per-edge probability as is.
  bool exceeds_one = false;
};

/// Inverts R0 = beta (<k^2> - <k>) / <k> with unit-weight degrees.
BetaEstimate beta_from_r0(const Graph& graph, double r0);

enum class ModelKind { Ode, Agent };

/// Model choice plus everything needed to run it on any graph.
struct ModelSpec {
  ModelKind kind = ModelKind::Agent;
  OdeSeirParams ode;
  AgentSeirParams agent;
  std::size_t trials = 1;
  unsigned threads = 1;

  double beta() const { return kind == ModelKind::Ode ? ode.beta : agent.beta; }
  void set_beta(double b) { (kind == ModelKind::Ode ? ode.beta : agent.beta) = b; }
};

struct ModelOutcome {
  CurveMetrics metrics;
  /// The ensemble mean for the agent model.
  EpidemicCurve curve;
  std::vector<TrialSummary> trials;
};

/// ODE: one integration. Agent: ensemble of spec.trials; metrics are
/// per-trial means.
ModelOutcome run_model(const Graph& graph, const ModelSpec& spec, const InitialCondition& init);

struct CalibrationOptions {
  double tolerance = 0.01;
  /// Defaults to [0, 10] for the ODE model and [0, 1] for the agent model.
  std::optional<std::pair<double, double>> bracket;
  int max_iterations = 60;
  /// Agent ensembles smaller than this are refused: the tolerance must
  /// exceed Monte Carlo noise.
  std::size_t min_agent_trials = 10;
};

struct CalibrationResult {
  double beta = 0.0;
  double achieved = 0.0;
  int iterations = 0;
};

/// Bisection on beta for the no-intervention final size. If the ODE cannot
/// be integrated at the upper bracket edge, that edge is halved towards the
/// lower one until it can.
CalibrationResult calibrate_beta_final_size(const Graph& graph, const ModelSpec& spec, const InitialCondition& init,
                                            double target, const CalibrationOptions& options = {});

/// "t,S,E,I,R" with header.
void write_curve_csv(std::ostream& out, const EpidemicCurve& curve);

}  // namespace lfb
