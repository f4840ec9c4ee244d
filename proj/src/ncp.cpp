#include "lfb/analysis.hpp"

#include "lfb/diffusion.hpp"
#include "lfb/graph_io.hpp"
#include "lfb/parallel.hpp"
#include "lfb/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace lfb {

namespace {

double power_of_ten(int bucket, int per_decade) {
  if (bucket % per_decade == 0) {
    double v = 1.0;
    for (int i = 0; i < bucket / per_decade; ++i) v *= 10.0;
    return v;
  }
  return std::pow(10.0, static_cast<double>(bucket) / per_decade);
}

std::vector<double> default_lambdas(const Graph& graph) {
  // Below d_min / vol the seed absorbs its unit mass without pushing.
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    const double d = graph.weighted_degree(static_cast<NodeId>(v));
    if (d > 0.0) dmin = std::min(dmin, d);
  }
  std::vector<double> out;
  for (double lam = 1.0; lam * graph.volume() > dmin && out.size() < 40; lam *= 0.5) out.push_back(lam);
  if (out.empty()) out.push_back(1.0);
  return out;
}

std::vector<NodeId> pick_seeds(const Graph& graph, const NcpOptions& o) {
  const std::size_t n = graph.node_count();
  if (o.seeds) return make_node_set(*o.seeds);
  std::vector<NodeId> all(n);
  for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<NodeId>(v);
  if (n <= o.max_seeds) return all;
  Rng rng(o.seed);
  for (std::size_t i = 0; i < o.max_seeds; ++i) std::swap(all[i], all[i + uniform_below(rng, n - i)]);
  all.resize(o.max_seeds);
  std::sort(all.begin(), all.end());
  return all;
}

struct Best {
  double phi = std::numeric_limits<double>::infinity();
  std::size_t run = 0;
  std::size_t size = 0;
  std::vector<NodeId> prefix;

  // Lower conductance wins; ties go to the earlier run, then the smaller set.
  bool beaten_by(double p, std::size_t r, std::size_t s) const {
    if (p != phi) return p < phi;
    if (r != run) return r < run;
    return s < size;
  }
};

}  // namespace

int size_bucket(std::size_t size, int per_decade) {
  if (size == 0) throw std::invalid_argument("set size must be positive");
  if (per_decade <= 0) throw std::invalid_argument("buckets per decade must be positive");
  const double k = static_cast<double>(size);
  int b = static_cast<int>(std::floor(per_decade * std::log10(k)));
  while (b > 0 && power_of_ten(b, per_decade) > k) --b;
  while (power_of_ten(b + 1, per_decade) <= k) ++b;
  return b;
}

double bucket_lower_edge(int bucket, int per_decade) { return power_of_ten(bucket, per_decade); }

std::vector<NcpPoint> ncp_approx(const Graph& graph, const NcpOptions& options) {
  if (graph.edge_count() == 0) throw std::invalid_argument("NCP needs at least one edge");
  const std::vector<double> lambdas = options.lambdas.empty() ? default_lambdas(graph) : options.lambdas;
  for (double l : lambdas)
    if (!(l > 0.0 && l <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
  const std::vector<NodeId> seeds = pick_seeds(graph, options);
  for (NodeId s : seeds)
    if (s < 0 || static_cast<std::size_t>(s) >= graph.node_count()) throw std::out_of_range("seed node out of range");

  const std::size_t runs = seeds.size() * lambdas.size();
  const unsigned workers = worker_count(runs, options.threads);
  std::vector<std::vector<std::unique_ptr<DiffusionSolver>>> solvers(workers);
  for (auto& w : solvers) w.resize(lambdas.size());
  std::vector<std::map<int, Best>> partial(workers);

  parallel_for_workers(runs, options.threads, [&](std::size_t run, unsigned worker) {
    const NodeId seed = seeds[run / lambdas.size()];
    const std::size_t li = run % lambdas.size();
    if (graph.degree(seed) == 0) return;
    auto& solver = solvers[worker][li];
    if (!solver)
      solver = std::make_unique<DiffusionSolver>(graph, sink_capacities(graph, lambdas[li]), options.epsilon);
    const SourceMass src{seed, 1.0};
    try {
      solver->solve({&src, 1});
    } catch (const InfeasibleError&) {
      return;
    }
    std::vector<NodeId> support;
    Vector x = Vector::Zero(static_cast<Eigen::Index>(graph.node_count()));
    for (NodeId v : solver->touched()) {
      if (solver->x(v) > 0.0) {
        support.push_back(v);
        x[v] = solver->x(v);
      }
    }
    if (support.empty()) return;
    const SweepProfile p = detail::sweep_profile_of(graph, x, std::move(support));
    auto& buckets = partial[worker];
    for (std::size_t k = 0; k < p.profile.size(); ++k) {
      if (!std::isfinite(p.profile[k])) continue;
      Best& b = buckets[size_bucket(k + 1, options.buckets_per_decade)];
      if (b.beaten_by(p.profile[k], run, k + 1)) {
        b.phi = p.profile[k];
        b.run = run;
        b.size = k + 1;
        b.prefix.assign(p.order.begin(), p.order.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      }
    }
  });

  std::map<int, Best> merged;
  for (auto& part : partial) {
    for (auto& [bucket, b] : part) {
      auto it = merged.find(bucket);
      if (it == merged.end() || it->second.beaten_by(b.phi, b.run, b.size)) merged[bucket] = std::move(b);
    }
  }
  std::vector<NcpPoint> out;
  out.reserve(merged.size());
  for (auto& [bucket, b] : merged) {
    NcpPoint pt;
    pt.bucket = bucket;
    pt.size = b.size;
    pt.conductance = b.phi;
    pt.witness = make_node_set(std::move(b.prefix));
    pt.seed_node = seeds[b.run / lambdas.size()];
    pt.lambda = lambdas[b.run % lambdas.size()];
    out.push_back(std::move(pt));
  }
  return out;
}

void write_ncp_csv(std::ostream& out, const std::vector<NcpPoint>& points, int per_decade) {
  out << "size_bucket,conductance\n";
  for (const NcpPoint& p : points)
    out << format_real(bucket_lower_edge(p.bucket, per_decade)) << ',' << format_real(p.conductance) << '\n';
}

}  // namespace lfb
