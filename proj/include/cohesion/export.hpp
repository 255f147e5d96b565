#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohesion/graph.hpp"

namespace cohesion {

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

// Cluster index per edge, -1 where the edge is in no cluster.
inline std::vector<std::int64_t> cluster_of_edges(std::size_t m, std::span<const EdgeSet> clusters) {
  std::vector<std::int64_t> out(m, -1);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (EdgeId e : clusters[c]) out[e] = static_cast<std::int64_t>(c);
  return out;
}

}  // namespace detail

// One subgraph per cluster; edges outside every cluster follow at top level.
inline void write_dot(std::ostream& out, const Graph& g, std::span<const EdgeSet> clusters) {
  out << "graph cohesion {\n";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    out << "  subgraph cluster_" << c << " {\n    cluster=" << c << ";\n";
    for (EdgeId e : clusters[c])
      out << "    " << detail::dot_quote(g.label(g.edge(e).lo)) << " -- "
          << detail::dot_quote(g.label(g.edge(e).hi)) << " [cluster=" << c << "];\n";
    out << "  }\n";
  }
  auto owner = detail::cluster_of_edges(g.edge_count(), clusters);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (owner[e] < 0)
      out << "  " << detail::dot_quote(g.label(g.edge(e).lo)) << " -- "
          << detail::dot_quote(g.label(g.edge(e).hi)) << ";\n";
  out << "}\n";
}

// `phi` may be empty when no trussness applies.
inline void write_graphml(std::ostream& out, const Graph& g, std::span<const EdgeSet> clusters,
                          std::span<const std::uint32_t> phi) {
  auto owner = detail::cluster_of_edges(g.edge_count(), clusters);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"phi\" for=\"edge\" attr.name=\"phi\" attr.type=\"long\"/>\n"
      << "  <key id=\"cluster\" for=\"edge\" attr.name=\"cluster\" attr.type=\"long\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "    <node id=\"n" << v << "\"><data key=\"label\">" << detail::xml_escape(g.label(v))
        << "</data></node>\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << "    <edge id=\"e" << e << "\" source=\"n" << g.edge(e).lo << "\" target=\"n" << g.edge(e).hi
        << "\">";
    if (!phi.empty()) out << "<data key=\"phi\">" << phi[e] << "</data>";
    out << "<data key=\"cluster\">" << owner[e] << "</data>";
    if (g.weighted()) out << "<data key=\"weight\">" << g.edge(e).weight << "</data>";
    out << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace cohesion
