#pragma once

#include "lfb/graph.hpp"

#include <cstdint>
#include <vector>

namespace lfb {

struct PlantedPartition {
  Graph graph;
  /// Community of each node, 0..k-1.
  std::vector<int> community;
};

/// Random graph with k consecutive communities of size n/k (the last one takes
/// the remainder). Intra-community pairs are joined with probability p_in,
/// inter-community pairs with p_out. Deterministic in `seed`.
PlantedPartition gen_planted_partition(int n, int k, double p_in, double p_out, std::uint64_t seed);

enum class ClusterShape { Clique, Grid };

struct ClusterSpec {
  int size = 4;
  ClusterShape shape = ClusterShape::Clique;
};

/// Path from member `member_a` of cluster `cluster_a` to member `member_b` of
/// cluster `cluster_b` with `length` edges (length - 1 fresh interior nodes).
struct BridgePath {
  int cluster_a = 0;
  int member_a = 0;
  int cluster_b = 1;
  int member_b = 0;
  int length = 1;
};

struct BridgedClusters {
  Graph graph;
  /// Cluster of each node; -1 for bridge interior nodes.
  std::vector<int> cluster;
  /// Ids of every edge lying on a bridge path, ascending.
  EdgeSet bridge_edges;
  /// Bridge edges grouped per path, in input order.
  std::vector<EdgeSet> paths;
};

/// Clusters are laid out consecutively (cluster 0 first); bridge interior
/// nodes follow in path order. Grid clusters need a perfect-square size and
/// number members row-major.
BridgedClusters gen_bridged_clusters(const std::vector<ClusterSpec>& clusters,
                                     const std::vector<BridgePath>& bridges);

}  // namespace lfb
