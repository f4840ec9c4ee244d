#include "lfb/analysis.hpp"

#include "lfb/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lfb {

double conductance(const Graph& graph, const NodeSet& nodes) {
  const std::size_t n = graph.node_count();
  std::vector<char> inside(n, 0);
  std::size_t distinct = 0;
  for (NodeId v : nodes) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::out_of_range("node id out of range");
    if (!inside[static_cast<std::size_t>(v)]) ++distinct;
    inside[static_cast<std::size_t>(v)] = 1;
  }
  if (distinct == 0 || distinct == n) throw std::invalid_argument("conductance needs a proper nonempty subset");
  double boundary = 0.0;
  double vol_in = 0.0;
  for (const Edge& e : graph.edges()) {
    const bool a = inside[static_cast<std::size_t>(e.u)];
    const bool b = inside[static_cast<std::size_t>(e.v)];
    if (a != b) boundary += e.w;
    vol_in += (a ? e.w : 0.0) + (b ? e.w : 0.0);
  }
  const double denom = std::min(vol_in, graph.volume() - vol_in);
  if (!(denom > 0.0)) throw std::invalid_argument("conductance undefined: one side has zero volume");
  return boundary / denom;
}

SweepProfile sweep_profile(const Graph& graph, const Vector& x) {
  const std::size_t n = graph.node_count();
  if (static_cast<std::size_t>(x.size()) != n) throw std::invalid_argument("x length does not match node count");
  SweepProfile out;
  for (std::size_t v = 0; v < n; ++v) {
    if (x[static_cast<Eigen::Index>(v)] < 0.0) throw std::invalid_argument("sweep values must be nonnegative");
    if (x[static_cast<Eigen::Index>(v)] > 0.0) out.order.push_back(static_cast<NodeId>(v));
  }
  if (out.order.empty() || out.order.size() == n)
    throw std::invalid_argument("sweep needs a support that is neither empty nor the whole node set");
  return detail::sweep_profile_of(graph, x, std::move(out.order));
}

namespace detail {

SweepProfile sweep_profile_of(const Graph& graph, const Vector& x, std::vector<NodeId> support) {
  auto key = [&](NodeId v) {
    const double d = graph.weighted_degree(v);
    return d > 0.0 ? x[v] / d : std::numeric_limits<double>::infinity();
  };
  std::sort(support.begin(), support.end(), [&](NodeId a, NodeId b) {
    const double ka = key(a);
    const double kb = key(b);
    return ka != kb ? ka > kb : a < b;
  });

  SweepProfile out;
  out.order = std::move(support);
  out.profile.reserve(out.order.size());
  std::vector<char> inside(graph.node_count(), 0);
  const double total = graph.volume();
  double cut = 0.0;
  double vol = 0.0;
  for (NodeId v : out.order) {
    double internal = 0.0;
    for (const Incidence& inc : graph.incident(v))
      if (inside[static_cast<std::size_t>(inc.node)]) internal += inc.w;
    inside[static_cast<std::size_t>(v)] = 1;
    vol += graph.weighted_degree(v);
    cut += graph.weighted_degree(v) - 2.0 * internal;
    const double denom = std::min(vol, total - vol);
    out.profile.push_back(denom > 0.0 ? std::max(cut, 0.0) / denom : std::numeric_limits<double>::infinity());
  }
  return out;
}

}  // namespace detail

SweepResult sweep_cut(const Graph& graph, const Vector& x) {
  const SweepProfile p = sweep_profile(graph, x);
  const auto best = static_cast<std::size_t>(std::min_element(p.profile.begin(), p.profile.end()) - p.profile.begin());
  if (!std::isfinite(p.profile[best])) throw std::invalid_argument("no sweep prefix has finite conductance");
  SweepResult r;
  r.nodes = make_node_set({p.order.begin(), p.order.begin() + static_cast<std::ptrdiff_t>(best) + 1});
  r.conductance = p.profile[best];
  return r;
}

std::map<std::size_t, std::size_t> degree_distribution(const Graph& graph) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t v = 0; v < graph.node_count(); ++v) ++out[graph.degree(static_cast<NodeId>(v))];
  return out;
}

Histogram weighted_degree_histogram(const Graph& graph, const std::vector<double>& bin_edges) {
  if (bin_edges.size() < 2 || !std::is_sorted(bin_edges.begin(), bin_edges.end()) ||
      std::adjacent_find(bin_edges.begin(), bin_edges.end()) != bin_edges.end())
    throw std::invalid_argument("bin edges must be strictly increasing with at least two entries");
  Histogram h;
  h.edges = bin_edges;
  h.counts.assign(bin_edges.size() - 1, 0);
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    const double d = graph.weighted_degree(static_cast<NodeId>(v));
    if (d < bin_edges.front() || d > bin_edges.back()) continue;
    auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), d);
    auto bin = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
    if (bin == h.counts.size()) --bin;
    ++h.counts[bin];
  }
  return h;
}

void write_degree_csv(std::ostream& out, const std::map<std::size_t, std::size_t>& histogram) {
  out << "degree,count\n";
  for (const auto& [d, c] : histogram) out << d << ',' << c << '\n';
}

std::size_t singleton_count_after_removal(const Graph& graph, const EdgeSet& removed) {
  std::vector<std::size_t> left(graph.node_count());
  for (std::size_t v = 0; v < left.size(); ++v) left[v] = graph.degree(static_cast<NodeId>(v));
  std::vector<char> gone(graph.edge_count(), 0);
  for (EdgeId e : removed) {
    if (e < 0 || static_cast<std::size_t>(e) >= graph.edge_count()) throw std::out_of_range("edge id out of range");
    if (gone[static_cast<std::size_t>(e)]) continue;
    gone[static_cast<std::size_t>(e)] = 1;
    --left[static_cast<std::size_t>(graph.edge(e).u)];
    --left[static_cast<std::size_t>(graph.edge(e).v)];
  }
  return static_cast<std::size_t>(std::count(left.begin(), left.end(), std::size_t{0}));
}

double low_degree_fraction(const Graph& graph, double threshold) {
  const std::size_t n = graph.node_count();
  if (n == 0) return 0.0;
  std::size_t low = 0;
  for (std::size_t v = 0; v < n; ++v) low += graph.weighted_degree(static_cast<NodeId>(v)) <= threshold ? 1 : 0;
  return static_cast<double>(low) / static_cast<double>(n);
}

}  // namespace lfb
