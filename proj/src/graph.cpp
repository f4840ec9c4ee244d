#include "lfb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace lfb {

Graph Graph::from_edges(NodeId node_count, std::span<const Edge> edges) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count)
      throw std::out_of_range("edge endpoint out of range");
    if (e.u == e.v || !(e.w > 0.0)) continue;
    canon.push_back(e.u < e.v ? e : Edge{e.v, e.u, e.w});
  }
  std::stable_sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<Edge> merged;
  merged.reserve(canon.size());
  for (const Edge& e : canon) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().w += e.w;
    else
      merged.push_back(e);
  }

  Graph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(merged);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  const auto n = static_cast<std::size_t>(node_count_);
  std::vector<std::size_t> counts(n, 0);
  for (const Edge& e : edges_) {
    ++counts[static_cast<std::size_t>(e.u)];
    ++counts[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + counts[v];
  adjacency_.assign(offsets_[n], Incidence{0, 0, 0.0});
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so appending in edge order yields neighbour
  // lists sorted by id: for a fixed node, neighbours below it arrive (as v)
  // before neighbours above it (as u), each group in increasing order.
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[cursor[static_cast<std::size_t>(e.v)]++] = {e.u, static_cast<EdgeId>(id), e.w};
  }
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[cursor[static_cast<std::size_t>(e.u)]++] = {e.v, static_cast<EdgeId>(id), e.w};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Incidence& a, const Incidence& b) { return a.node < b.node; });
  }

  weighted_degree_ = Vector::Zero(static_cast<Eigen::Index>(n));
  for (const Edge& e : edges_) {
    weighted_degree_[e.u] += e.w;
    weighted_degree_[e.v] += e.w;
  }
  volume_ = weighted_degree_.sum();
}

double Graph::max_weight() const {
  double m = 0.0;
  for (const Edge& e : edges_) m = std::max(m, e.w);
  return m;
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  if (a < 0 || b < 0 || a >= node_count_ || b >= node_count_) return std::nullopt;
  const auto inc = incident(a);
  auto it = std::lower_bound(inc.begin(), inc.end(), b,
                             [](const Incidence& x, NodeId key) { return x.node < key; });
  if (it != inc.end() && it->node == b) return it->edge;
  return std::nullopt;
}

std::string Graph::label(NodeId v) const {
  if (!labels_.empty()) return labels_[static_cast<std::size_t>(v)];
  return std::to_string(v);
}

std::optional<NodeId> Graph::find_label(const std::string& label) const {
  if (labels_.empty()) {
    try {
      std::size_t pos = 0;
      const long long id = std::stoll(label, &pos);
      if (pos == label.size() && id >= 0 && id < node_count_) return static_cast<NodeId>(id);
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (labels_[v] == label) return static_cast<NodeId>(v);
  return std::nullopt;
}

Vector Graph::populations() const {
  if (populations_.size() > 0) return populations_;
  return Vector::Ones(node_count_);
}

Graph Graph::with_labels(std::vector<std::string> labels) const {
  if (!labels.empty() && labels.size() != node_count())
    throw std::invalid_argument("label count does not match node count");
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::with_populations(Vector populations) const {
  if (populations.size() != node_count_)
    throw std::invalid_argument("population count does not match node count");
  if ((populations.array() <= 0.0).any())
    throw std::invalid_argument("populations must be positive");
  Graph g = *this;
  g.populations_ = std::move(populations);
  return g;
}

Graph Graph::with_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size())
    throw std::invalid_argument("weight count does not match edge count");
  Graph g = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("edge weights must be positive");
    g.edges_[i].w = weights[i];
  }
  for (Incidence& inc : g.adjacency_) inc.w = g.edges_[static_cast<std::size_t>(inc.edge)].w;
  g.weighted_degree_.setZero();
  for (const Edge& e : g.edges_) {
    g.weighted_degree_[e.u] += e.w;
    g.weighted_degree_[e.v] += e.w;
  }
  g.volume_ = g.weighted_degree_.sum();
  return g;
}

bool Graph::check_invariants(double tol) const {
  Vector deg = Vector::Zero(node_count_);
  double total = 0.0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!(e.u < e.v) || !(e.w > 0.0)) return false;
    if (i > 0) {
      const Edge& p = edges_[i - 1];
      if (!(p.u < e.u || (p.u == e.u && p.v < e.v))) return false;
    }
    deg[e.u] += e.w;
    deg[e.v] += e.w;
    total += e.w;
  }
  const double scale = std::max(1.0, volume_);
  if ((deg - weighted_degree_).cwiseAbs().maxCoeff() > tol * scale && node_count_ > 0)
    return false;
  if (std::abs(deg.sum() - volume_) > tol * scale) return false;
  if (std::abs(2.0 * total - volume_) > tol * scale) return false;
  return true;
}

std::vector<int> connected_components(const Graph& graph, int* count) {
  const auto n = graph.node_count();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : graph.incident(v)) {
        if (comp[static_cast<std::size_t>(inc.node)] < 0) {
          comp[static_cast<std::size_t>(inc.node)] = next;
          stack.push_back(inc.node);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

bool is_connected(const Graph& graph) {
  int count = 0;
  connected_components(graph, &count);
  return count <= 1;
}

Component largest_connected_component(const Graph& graph) {
  if (graph.node_count() == 0) throw std::invalid_argument("empty graph has no components");
  int count = 0;
  const auto comp = connected_components(graph, &count);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (int c : comp) ++sizes[static_cast<std::size_t>(c)];
  // Components are numbered by their smallest member, so the first maximum
  // is the tie winner.
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Component out;
  std::vector<NodeId> to_new(graph.node_count(), -1);
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    if (comp[v] == best) {
      to_new[v] = static_cast<NodeId>(out.to_original.size());
      out.to_original.push_back(static_cast<NodeId>(v));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges())
    if (comp[static_cast<std::size_t>(e.u)] == best)
      edges.push_back({to_new[static_cast<std::size_t>(e.u)], to_new[static_cast<std::size_t>(e.v)], e.w});
  out.graph = Graph::from_edges(static_cast<NodeId>(out.to_original.size()), edges);

  if (graph.has_labels()) {
    std::vector<std::string> labels;
    for (NodeId v : out.to_original) labels.push_back(graph.label(v));
    out.graph = out.graph.with_labels(std::move(labels));
  }
  if (graph.has_populations()) {
    const Vector pop = graph.populations();
    Vector sub(static_cast<Eigen::Index>(out.to_original.size()));
    for (std::size_t i = 0; i < out.to_original.size(); ++i)
      sub[static_cast<Eigen::Index>(i)] = pop[out.to_original[i]];
    out.graph = out.graph.with_populations(std::move(sub));
  }
  return out;
}

Graph reweigh_edges(const Graph& graph, const std::map<EdgeId, double>& factors) {
  std::vector<double> w(graph.edge_count());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = graph.edges()[i].w;
  for (const auto& [id, factor] : factors) {
    if (id < 0 || static_cast<std::size_t>(id) >= w.size())
      throw std::out_of_range("unknown edge id " + std::to_string(id));
    if (!(factor > 0.0)) throw std::invalid_argument("weight multipliers must be positive");
    w[static_cast<std::size_t>(id)] *= factor;
  }
  return graph.with_weights(w);
}

Graph disconnect_nodes(const Graph& graph, const NodeSet& nodes) {
  std::vector<char> drop(graph.node_count(), 0);
  for (NodeId v : nodes) {
    if (v < 0 || static_cast<std::size_t>(v) >= graph.node_count())
      throw std::out_of_range("node id " + std::to_string(v) + " out of range");
    drop[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Edge> kept;
  kept.reserve(graph.edge_count());
  for (const Edge& e : graph.edges())
    if (!drop[static_cast<std::size_t>(e.u)] && !drop[static_cast<std::size_t>(e.v)]) kept.push_back(e);
  Graph g = Graph::from_edges(static_cast<NodeId>(graph.node_count()), kept);
  if (graph.has_labels()) g = g.with_labels(graph.labels());
  if (graph.has_populations()) g = g.with_populations(graph.populations());
  return g;
}

NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace lfb
