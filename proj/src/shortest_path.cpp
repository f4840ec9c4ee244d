#include "lfb/centrality.hpp"
#include "lfb/parallel.hpp"

#include <algorithm>

namespace lfb {

namespace {

constexpr std::size_t kReductionBlocks = 64;

struct BrandesWorkspace {
  std::vector<int> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> order;

  explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) { order.reserve(n); }

  // Adds the dependencies of source s to acc. Edge weights are ignored.
  void accumulate(const Graph& g, NodeId s, Vector& acc) {
    order.clear();
    dist[static_cast<std::size_t>(s)] = 0;
    sigma[static_cast<std::size_t>(s)] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      const int dv = dist[static_cast<std::size_t>(v)];
      for (const Incidence& inc : g.incident(v)) {
        const auto w = static_cast<std::size_t>(inc.node);
        if (dist[w] < 0) {
          dist[w] = dv + 1;
          order.push_back(inc.node);
        }
        if (dist[w] == dv + 1) sigma[w] += sigma[static_cast<std::size_t>(v)];
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      const NodeId w = order[i];
      const auto wi = static_cast<std::size_t>(w);
      for (const Incidence& inc : g.incident(w)) {
        const auto v = static_cast<std::size_t>(inc.node);
        if (dist[v] == dist[wi] - 1) {
          const double c = sigma[v] / sigma[wi] * (1.0 + delta[wi]);
          acc[inc.edge] += c;
          delta[v] += c;
        }
      }
    }
    for (NodeId v : order) {
      const auto i = static_cast<std::size_t>(v);
      dist[i] = -1;
      sigma[i] = 0.0;
      delta[i] = 0.0;
    }
  }
};

}  // namespace

EdgeScores sp_betweenness(const Graph& graph, const SpOptions& options) {
  const std::size_t n = graph.node_count();
  const std::size_t m = graph.edge_count();
  const std::size_t blocks = std::min(kReductionBlocks, std::max<std::size_t>(n, 1));
  std::vector<Vector> partial(blocks);
  parallel_for(blocks, options.threads, [&](std::size_t b) {
    BrandesWorkspace ws(n);
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t s = n * b / blocks; s < n * (b + 1) / blocks; ++s)
      ws.accumulate(graph, static_cast<NodeId>(s), acc);
    partial[b] = std::move(acc);
  });
  EdgeScores out;
  out.method = Method::SP;
  out.values = Vector::Zero(static_cast<Eigen::Index>(m));
  for (const Vector& p : partial) out.values += p;
  return out;
}

}  // namespace lfb
