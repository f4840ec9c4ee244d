#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfb {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

using Vector = Eigen::VectorXd;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;
/// Sorted, duplicate-free list of edge ids.
using EdgeSet = std::vector<EdgeId>;

struct Edge {
  NodeId u;
  NodeId v;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  NodeId node;
  EdgeId edge;
  double w;
};

/// Raised for malformed text input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/**
 * Undirected weighted graph in compressed adjacency form.
 *
 * Edges are stored once, with u < v, sorted lexicographically by (u, v); the
 * position in that order is the edge id. Every node's incidence list is sorted
 * by neighbour id. Instances are immutable; mutating operations return new
 * graphs.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from arbitrary edges: endpoints are swapped into canonical
  /// order, duplicates merged by summing weights, self-loops and non-positive
  /// weights dropped.
  static Graph from_edges(NodeId node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return static_cast<std::size_t>(node_count_); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const Incidence> incident(NodeId v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {adjacency_.data() + b, e - b};
  }
  std::size_t degree(NodeId v) const { return incident(v).size(); }

  double weighted_degree(NodeId v) const { return weighted_degree_[v]; }
  const Vector& weighted_degrees() const { return weighted_degree_; }
  double volume() const { return volume_; }
  double max_weight() const;

  /// Id of edge (a, b) in either orientation, if present.
  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

  bool has_labels() const { return !labels_.empty(); }
  /// External label; falls back to the decimal id when the graph has none.
  std::string label(NodeId v) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find_label(const std::string& label) const;

  bool has_populations() const { return populations_.size() > 0; }
  /// Per-node population N_i; all ones when none were attached.
  Vector populations() const;

  Graph with_labels(std::vector<std::string> labels) const;
  Graph with_populations(Vector populations) const;
  /// Same topology and annotations, new weights (aligned with edge ids). Every
  /// weight must be positive.
  Graph with_weights(std::span<const double> weights) const;

  /// Re-derives degrees and volume from the edge list and compares.
  bool check_invariants(double tol = 1e-9) const;

 private:
  void build_adjacency();

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> adjacency_;
  Vector weighted_degree_;
  double volume_ = 0.0;
  std::vector<std::string> labels_;
  Vector populations_;
};

/// Largest connected component with dense re-indexing. `to_original[i]` is the
/// original id of new node i.
struct Component {
  Graph graph;
  std::vector<NodeId> to_original;
};

/// Returns the largest component; ties go to the one holding the smallest id.
Component largest_connected_component(const Graph& graph);

/// Component id per node, numbered in order of the smallest member.
std::vector<int> connected_components(const Graph& graph, int* count = nullptr);
bool is_connected(const Graph& graph);

/// Multiplies listed edge weights by the given factors (> 0).
Graph reweigh_edges(const Graph& graph, const std::map<EdgeId, double>& factors);

/// Removes every edge incident to a listed node. Nodes keep their ids.
Graph disconnect_nodes(const Graph& graph, const NodeSet& nodes);

/// Sorts and removes duplicates.
NodeSet make_node_set(std::vector<NodeId> ids);

}  // namespace lfb
