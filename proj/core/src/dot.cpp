#include "catenae/dot.hpp"

#include <fmt/format.h>

namespace catenae::dot {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const graphrank::WordGraph& g, const std::string& name) {
  const char* arrow = g.directed() ? " -> " : " -- ";
  std::string out = fmt::format("{} {} {{\n", g.directed() ? "digraph" : "graph", quote(name));
  for (const auto& v : g.vertices()) out += fmt::format("  {};\n", quote(v));
  for (const auto& [e, w] : g.edges()) {
    out += fmt::format("  {}{}{} [weight={:g}];\n", quote(g.vertices()[e.first]), arrow,
                       quote(g.vertices()[e.second]), w);
  }
  out += "}\n";
  return out;
}

std::string to_dot(const bipartite::BipartiteGraph& g, const std::string& name) {
  using bipartite::Side;
  std::string out = fmt::format("graph {} {{\n", quote(name));
  // Entity labels may collide with sentence labels, so prefix both.
  out += "  subgraph cluster_sentences {\n";
  for (const auto& s : g.labels(Side::kSentences)) {
    out += fmt::format("    {} [shape=box,label={}];\n", quote("S:" + s), quote(s));
  }
  out += "  }\n  subgraph cluster_entities {\n";
  for (const auto& e : g.labels(Side::kEntities)) {
    out += fmt::format("    {} [shape=ellipse,label={}];\n", quote("E:" + e), quote(e));
  }
  out += "  }\n";
  for (const auto& [e, w] : g.edges()) {
    out += fmt::format("  {} -- {} [weight={:g}];\n", quote("S:" + g.labels(Side::kSentences)[e.first]),
                       quote("E:" + g.labels(Side::kEntities)[e.second]), w);
  }
  out += "}\n";
  return out;
}

std::string to_dot(const bipartite::ProjectedGraph& g, const std::string& name) {
  std::string out = fmt::format("graph {} {{\n", quote(name));
  for (const auto& v : g.vertices) out += fmt::format("  {};\n", quote(v));
  for (const auto& [e, w] : g.edges) {
    out += fmt::format("  {} -- {} [weight={:g}];\n", quote(g.vertices[e.first]), quote(g.vertices[e.second]), w);
  }
  out += "}\n";
  return out;
}

}  // namespace catenae::dot
