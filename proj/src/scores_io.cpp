#include "lfb/centrality.hpp"
#include "lfb/graph_io.hpp"

#include <cstring>
#include <ostream>

namespace lfb {

std::string method_name(Method method) {
  switch (method) {
    case Method::LF: return "LF";
    case Method::SP: return "SP";
    case Method::CF: return "CF";
    case Method::HD: return "HD";
    case Method::EG: return "EG";
    case Method::L2Flow: return "L2FLOW";
  }
  return "?";
}

std::string score_tag(Method method, const ScoreParams& params) {
  if (method == Method::LF && params.lambda) return "LF(" + format_real(*params.lambda) + ")";
  return method_name(method);
}

std::optional<Method> parse_method(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (Method m : {Method::LF, Method::SP, Method::CF, Method::HD, Method::EG, Method::L2Flow})
    if (method_name(m) == up) return m;
  return std::nullopt;
}

void write_edge_scores_csv(std::ostream& out, const Graph& graph, const EdgeScores& scores) {
  out << "u_label,v_label,score\n";
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    out << graph.label(e.u) << ',' << graph.label(e.v) << ','
        << format_real(scores.values[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

void write_node_scores_csv(std::ostream& out, const Graph& graph, const NodeScores& scores) {
  out << "label,score\n";
  for (std::size_t v = 0; v < graph.node_count(); ++v)
    out << graph.label(static_cast<NodeId>(v)) << ',' << format_real(scores.values[static_cast<Eigen::Index>(v)])
        << '\n';
}

std::string score_fingerprint(const Vector& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    const double v = values[i];
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace lfb
