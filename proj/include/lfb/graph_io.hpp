#pragma once

#include "lfb/graph.hpp"

#include <iosfwd>
#include <string>

namespace lfb {

struct EdgeListOptions {
  /// Read the optional third column as a weight; otherwise every edge is unit.
  bool weighted = true;
  std::string comment_prefix = "#";
};

struct LoadedGraph {
  Graph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

/// Parses "u v [w]" lines. Labels are arbitrary tokens, remapped to dense ids
/// in first-seen order.
LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// Parses "label value" lines into node populations. Unlisted nodes get 1.
Graph load_node_attributes(std::istream& in, const Graph& graph,
                           const std::string& comment_prefix = "#");

/// Writes "u v w" lines using labels, in canonical edge order.
void write_edge_list(std::ostream& out, const Graph& graph);

/// Shortest decimal form that round-trips to the same double.
std::string format_real(double value);

}  // namespace lfb
