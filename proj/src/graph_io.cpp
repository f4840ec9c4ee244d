#include "lfb/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lfb {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

bool is_skippable(const std::vector<std::string>& tokens, const std::string& comment) {
  return tokens.empty() || (!comment.empty() && tokens.front().rfind(comment, 0) == 0);
}

double parse_real(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "not a number: '" + tok + "'");
  return value;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  LoadedGraph out;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (is_skippable(tokens, options.comment_prefix)) continue;
    if (tokens.size() < 2 || tokens.size() > 3)
      throw ParseError(lineno, "expected 'u v' or 'u v w'");
    double w = 1.0;
    if (tokens.size() == 3) {
      const double parsed = parse_real(tokens[2], lineno);
      if (!(parsed > 0.0)) throw ParseError(lineno, "edge weight must be positive");
      if (options.weighted) w = parsed;
    }
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    edges.push_back({u, v, w});
  }

  out.graph = Graph::from_edges(static_cast<NodeId>(labels.size()), edges).with_labels(std::move(labels));
  out.duplicates_merged = edges.size() - out.graph.edge_count();
  return out;
}

Graph load_node_attributes(std::istream& in, const Graph& graph, const std::string& comment_prefix) {
  std::unordered_map<std::string, NodeId> ids;
  for (std::size_t v = 0; v < graph.node_count(); ++v)
    ids.emplace(graph.label(static_cast<NodeId>(v)), static_cast<NodeId>(v));

  Vector pop = Vector::Ones(static_cast<Eigen::Index>(graph.node_count()));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (is_skippable(tokens, comment_prefix)) continue;
    if (tokens.size() != 2) throw ParseError(lineno, "expected 'label value'");
    auto it = ids.find(tokens[0]);
    if (it == ids.end()) throw ParseError(lineno, "unknown node label '" + tokens[0] + "'");
    const double value = parse_real(tokens[1], lineno);
    if (!(value > 0.0)) throw ParseError(lineno, "population must be positive");
    pop[it->second] = value;
  }
  return graph.with_populations(std::move(pop));
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  for (const Edge& e : graph.edges())
    out << graph.label(e.u) << ' ' << graph.label(e.v) << ' ' << format_real(e.w) << '\n';
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace lfb
