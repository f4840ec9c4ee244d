#include "lfb/generators.hpp"

#include "lfb/random.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace lfb {

PlantedPartition gen_planted_partition(int n, int k, double p_in, double p_out, std::uint64_t seed) {
  if (n <= 0 || k <= 0) throw std::invalid_argument("n and k must be positive");
  if (k > n) throw std::invalid_argument("more communities than nodes");
  if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
    throw std::invalid_argument("need 0 <= p_out < p_in <= 1");

  PlantedPartition out;
  out.community.resize(static_cast<std::size_t>(n));
  const int base = n / k;
  for (int v = 0; v < n; ++v) out.community[static_cast<std::size_t>(v)] = std::min(v / base, k - 1);

  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = out.community[static_cast<std::size_t>(u)] == out.community[static_cast<std::size_t>(v)] ? p_in : p_out;
      if (bernoulli(rng, p)) edges.push_back({u, v, 1.0});
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

BridgedClusters gen_bridged_clusters(const std::vector<ClusterSpec>& clusters,
                                     const std::vector<BridgePath>& bridges) {
  if (clusters.empty()) throw std::invalid_argument("need at least one cluster");
  std::vector<int> first(clusters.size());
  std::vector<int> cluster_of;
  std::vector<Edge> edges;
  int next = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const ClusterSpec& spec = clusters[c];
    if (spec.size < 1) throw std::invalid_argument("cluster size must be positive");
    first[c] = next;
    if (spec.shape == ClusterShape::Clique) {
      for (int a = 0; a < spec.size; ++a)
        for (int b = a + 1; b < spec.size; ++b) edges.push_back({next + a, next + b, 1.0});
    } else {
      const int side = static_cast<int>(std::lround(std::sqrt(spec.size)));
      if (side * side != spec.size) throw std::invalid_argument("grid cluster size must be a perfect square");
      for (int r = 0; r < side; ++r)
        for (int col = 0; col < side; ++col) {
          const int id = next + r * side + col;
          if (col + 1 < side) edges.push_back({id, id + 1, 1.0});
          if (r + 1 < side) edges.push_back({id, id + side, 1.0});
        }
    }
    cluster_of.insert(cluster_of.end(), static_cast<std::size_t>(spec.size), static_cast<int>(c));
    next += spec.size;
  }

  auto member = [&](int c, int m) {
    if (c < 0 || static_cast<std::size_t>(c) >= clusters.size())
      throw std::invalid_argument("bridge names unknown cluster " + std::to_string(c));
    if (m < 0 || m >= clusters[static_cast<std::size_t>(c)].size)
      throw std::invalid_argument("bridge names unknown member " + std::to_string(m));
    return first[static_cast<std::size_t>(c)] + m;
  };

  std::vector<std::vector<std::pair<int, int>>> path_pairs;
  std::set<std::pair<int, int>> seen;
  for (const BridgePath& b : bridges) {
    if (b.length < 1) throw std::invalid_argument("bridge length must be at least 1");
    const int a = member(b.cluster_a, b.member_a);
    const int z = member(b.cluster_b, b.member_b);
    if (a == z) throw std::invalid_argument("bridge endpoints coincide");
    std::vector<int> nodes{a};
    for (int i = 1; i < b.length; ++i) {
      nodes.push_back(next++);
      cluster_of.push_back(-1);
    }
    nodes.push_back(z);
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const auto key = std::minmax(nodes[i], nodes[i + 1]);
      if (!seen.insert(key).second) throw std::invalid_argument("bridge duplicates an existing edge");
      edges.push_back({nodes[i], nodes[i + 1], 1.0});
      pairs.emplace_back(key.first, key.second);
    }
    path_pairs.push_back(std::move(pairs));
  }
  // A direct bridge may not coincide with a cluster edge either.
  const std::size_t expected = edges.size();

  BridgedClusters out;
  out.graph = Graph::from_edges(next, edges);
  if (out.graph.edge_count() != expected) throw std::invalid_argument("bridge duplicates an existing edge");
  out.cluster = std::move(cluster_of);
  for (const auto& pairs : path_pairs) {
    EdgeSet ids;
    for (auto [u, v] : pairs) ids.push_back(*out.graph.find_edge(u, v));
    out.bridge_edges.insert(out.bridge_edges.end(), ids.begin(), ids.end());
    out.paths.push_back(std::move(ids));
  }
  std::sort(out.bridge_edges.begin(), out.bridge_edges.end());
  return out;
}

}  // namespace lfb
