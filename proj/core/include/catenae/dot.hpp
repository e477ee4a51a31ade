#pragma once

#include <string>

#include "catenae/bipartite.hpp"
#include "catenae/graphrank.hpp"

namespace catenae::dot {

/// Graphviz text. Output is deterministic: vertices and edges in index order.
std::string to_dot(const graphrank::WordGraph& g, const std::string& name = "words");
std::string to_dot(const bipartite::BipartiteGraph& g, const std::string& name = "bipartite");
std::string to_dot(const bipartite::ProjectedGraph& g, const std::string& name = "projection");

}  // namespace catenae::dot
