#pragma once

#include "lfb/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace lfb {

/// Boundary weight of S over the smaller of vol(S) and vol(V \ S).
double conductance(const Graph& graph, const NodeSet& nodes);

struct SweepResult {
  NodeSet nodes;
  double conductance = 0.0;
};

/// Conductance of each prefix of the support of x, ordered by x(v)/d(v)
/// descending with ties by id. profile[k-1] is the prefix of size k; a
/// prefix whose complement has zero volume gets +inf.
struct SweepProfile {
  std::vector<NodeId> order;
  std::vector<double> profile;
};
SweepProfile sweep_profile(const Graph& graph, const Vector& x);

namespace detail {
/// Profile over an explicit support without the proper-subset check.
SweepProfile sweep_profile_of(const Graph& graph, const Vector& x, std::vector<NodeId> support);
}

/// Best prefix of the sweep order.
SweepResult sweep_cut(const Graph& graph, const Vector& x);

struct NcpPoint {
  int bucket = 0;
  std::size_t size = 0;
  double conductance = 0.0;
  NodeSet witness;
  NodeId seed_node = 0;
  double lambda = 0.0;
};

struct NcpOptions {
  std::vector<double> lambdas;  // empty: 2^-k down to the smallest admissible value
  std::optional<std::vector<NodeId>> seeds;
  std::size_t max_seeds = 10000;
  std::uint64_t seed = 1;
  int buckets_per_decade = 10;
  double epsilon = 1e-6;
  unsigned threads = 1;
};

/// Log-spaced bucket of a set size: floor(per_decade * log10(k)), computed so
/// that exact powers of ten land on their own boundary.
int size_bucket(std::size_t size, int per_decade = 10);
/// Lower size edge of a bucket, as a real number.
double bucket_lower_edge(int bucket, int per_decade = 10);

/// Empirical upper envelope of the network community profile, one point per
/// nonempty bucket in increasing order.
std::vector<NcpPoint> ncp_approx(const Graph& graph, const NcpOptions& options = {});

/// "size_bucket,conductance", using the lower size edge of each bucket.
void write_ncp_csv(std::ostream& out, const std::vector<NcpPoint>& points, int per_decade = 10);

/// Count of nodes per integer (unit-weight) degree.
std::map<std::size_t, std::size_t> degree_distribution(const Graph& graph);

/// counts[i] holds weighted degrees in [edges[i], edges[i+1]); the last bin
/// is closed on the right. Values outside the edges are not counted.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};
Histogram weighted_degree_histogram(const Graph& graph, const std::vector<double>& bin_edges);

void write_degree_csv(std::ostream& out, const std::map<std::size_t, std::size_t>& histogram);

/// Nodes left without incident edges if `removed` were deleted.
std::size_t singleton_count_after_removal(const Graph& graph, const EdgeSet& removed);

/// Fraction of nodes whose weighted degree is at most threshold.
double low_degree_fraction(const Graph& graph, double threshold);

}  // namespace lfb
