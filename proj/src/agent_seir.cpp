#include "lfb/epidemic.hpp"

#include "lfb/graph_io.hpp"
#include "lfb/parallel.hpp"
#include "lfb/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfb {

namespace {

enum State : std::uint8_t { kS = 0, kE = 1, kI = 2, kR = 3 };

NodeSet initial_infectious(const Graph& graph, const InitialCondition& init, Rng& trial_rng) {
  const std::size_t n = graph.node_count();
  auto check_node = [&](NodeId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::out_of_range("initial node id out of range");
  };
  NodeSet out;
  switch (init.mode) {
    case InitialCondition::Mode::ClusterSeed:
      for (NodeId v : init.nodes) check_node(v);
      out = init.nodes;
      break;
    case InitialCondition::Mode::Explicit:
      for (auto [v, f] : init.fractions) {
        check_node(v);
        if (f > 0.0) out.push_back(v);
      }
      break;
    case InitialCondition::Mode::RandomFraction: {
      if (!(init.fraction >= 0.0 && init.fraction <= 1.0))
        throw std::invalid_argument("initial fraction must lie in [0, 1]");
      const auto k = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::llround(init.fraction * static_cast<double>(n))), 1, n);
      Rng fixed(init.seed.value_or(0));
      Rng& rng = init.seed ? fixed : trial_rng;
      std::vector<NodeId> pool(n);
      for (std::size_t v = 0; v < n; ++v) pool[v] = static_cast<NodeId>(v);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_below(rng, n - i);
        std::swap(pool[i], pool[j]);
      }
      out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
  }
  out = make_node_set(std::move(out));
  if (out.empty()) throw std::invalid_argument("initial infectious set is empty");
  return out;
}

}  // namespace

EpidemicCurve simulate_agent_seir(const Graph& graph, const AgentSeirParams& params, const InitialCondition& init) {
  if (!(params.beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(params.sigma > 0.0 && params.sigma <= 1.0) || !(params.gamma > 0.0 && params.gamma <= 1.0))
    throw std::invalid_argument("sigma and gamma must lie in (0, 1]");
  if (params.horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  const std::size_t n = graph.node_count();
  if (n == 0) throw std::invalid_argument("empty graph");

  EpidemicCurve curve;
  curve.population = static_cast<double>(n);
  if (params.beta * graph.max_weight() > 1.0)
    curve.warnings.push_back("transmission probability beta*w = " + format_real(params.beta * graph.max_weight()) +
                             " clamped to 1");

  Rng rng(params.seed);
  std::vector<std::uint8_t> state(n, kS);
  std::vector<char> exposed_today(n, 0);
  std::vector<NodeId> exposed;
  std::vector<NodeId> infectious = initial_infectious(graph, init, rng);
  for (NodeId v : infectious) state[static_cast<std::size_t>(v)] = kI;
  std::array<std::int64_t, 4> count{static_cast<std::int64_t>(n - infectious.size()), 0,
                                    static_cast<std::int64_t>(infectious.size()), 0};

  auto record = [&](int day) {
    const double N = static_cast<double>(n);
    curve.t.push_back(day);
    curve.counts.push_back(count);
    curve.S.push_back(static_cast<double>(count[kS]) / N);
    curve.E.push_back(static_cast<double>(count[kE]) / N);
    curve.I.push_back(static_cast<double>(count[kI]) / N);
    curve.R.push_back(static_cast<double>(count[kR]) / N);
  };
  record(0);

  std::vector<NodeId> newly_exposed, still_exposed, promoted, still_infectious;
  for (int day = 1; day <= params.horizon; ++day) {
    if (params.stop_at_extinction && exposed.empty() && infectious.empty()) break;

    // All events are drawn against the state at the start of the day.
    newly_exposed.clear();
    for (NodeId i : infectious) {
      for (const Incidence& inc : graph.incident(i)) {
        const auto w = static_cast<std::size_t>(inc.node);
        if (state[w] != kS || exposed_today[w]) continue;
        const double p = std::min(1.0, params.beta * inc.w);
        if (bernoulli(rng, p)) {
          exposed_today[w] = 1;
          newly_exposed.push_back(inc.node);
        }
      }
    }
    still_exposed.clear();
    promoted.clear();
    for (NodeId e : exposed) (bernoulli(rng, params.sigma) ? promoted : still_exposed).push_back(e);
    still_infectious.clear();
    std::int64_t removed = 0;
    for (NodeId i : infectious) {
      if (bernoulli(rng, params.gamma)) {
        state[static_cast<std::size_t>(i)] = kR;
        ++removed;
      } else {
        still_infectious.push_back(i);
      }
    }
    for (NodeId v : newly_exposed) {
      state[static_cast<std::size_t>(v)] = kE;
      exposed_today[static_cast<std::size_t>(v)] = 0;
    }
    for (NodeId v : promoted) state[static_cast<std::size_t>(v)] = kI;

    count[kS] -= static_cast<std::int64_t>(newly_exposed.size());
    count[kE] += static_cast<std::int64_t>(newly_exposed.size()) - static_cast<std::int64_t>(promoted.size());
    count[kI] += static_cast<std::int64_t>(promoted.size()) - removed;
    count[kR] += removed;

    exposed = still_exposed;
    exposed.insert(exposed.end(), newly_exposed.begin(), newly_exposed.end());
    std::sort(exposed.begin(), exposed.end());
    infectious = still_infectious;
    infectious.insert(infectious.end(), promoted.begin(), promoted.end());
    std::sort(infectious.begin(), infectious.end());
    record(day);
  }
  return curve;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return trial == 0 ? master : derive_seed(master, trial);
}

EnsembleResult ensemble_agent_seir(const Graph& graph, const AgentSeirParams& params,
                                   const InitialCondition& init, std::size_t trials, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::vector<EpidemicCurve> curves(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    AgentSeirParams p = params;
    p.seed = trial_seed(params.seed, k);
    curves[k] = simulate_agent_seir(graph, p, init);
  });

  EnsembleResult out;
  std::size_t longest = 0;
  for (const auto& c : curves) longest = std::max(longest, c.size());
  EpidemicCurve& mean = out.mean;
  mean.population = curves.front().population;
  mean.warnings = curves.front().warnings;
  mean.t.resize(longest);
  mean.S.assign(longest, 0.0);
  mean.E.assign(longest, 0.0);
  mean.I.assign(longest, 0.0);
  mean.R.assign(longest, 0.0);
  for (std::size_t k = 0; k < longest; ++k) mean.t[k] = static_cast<double>(k);
  const double scale = 1.0 / static_cast<double>(trials);
  for (std::size_t j = 0; j < trials; ++j) {
    const EpidemicCurve& c = curves[j];
    for (std::size_t k = 0; k < longest; ++k) {
      const std::size_t src = std::min(k, c.size() - 1);
      mean.S[k] += scale * c.S[src];
      mean.E[k] += scale * c.E[src];
      mean.I[k] += scale * c.I[src];
      mean.R[k] += scale * c.R[src];
    }
    TrialSummary s;
    s.seed = trial_seed(params.seed, j);
    s.metrics = curve_metrics(c);
    out.trials.push_back(s);
    out.mean_final_size += scale * s.metrics.final_size;
    out.mean_peak_prevalence += scale * s.metrics.peak_prevalence;
    out.mean_peak_time += scale * s.metrics.peak_time;
  }
  if (trials == 1) out.mean = curves.front();
  return out;
}

}  // namespace lfb
