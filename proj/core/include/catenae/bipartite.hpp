#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "catenae/entitygrid.hpp"

namespace catenae::bipartite {

enum class Side { kSentences, kEntities };

/// Two-mode graph: sentences on the left, entities on the right. Edges only
/// run between the sides and carry a weight (1 unless role weighting is on).
class BipartiteGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // (sentence, entity)

  BipartiteGraph() = default;
  /// Throws ValidationError on out-of-range endpoints, repeated edges, or
  /// non-positive weights.
  BipartiteGraph(std::vector<std::string> sentence_labels, std::vector<std::string> entity_labels,
                 const std::vector<std::pair<Edge, double>>& edges);

  std::size_t size(Side side) const { return labels(side).size(); }
  const std::vector<std::string>& labels(Side side) const {
    return side == Side::kSentences ? sentences_ : entities_;
  }
  /// Sorted neighbour indices on the opposite side.
  const std::vector<std::size_t>& neighbours(Side side, std::size_t v) const {
    return side == Side::kSentences ? sentence_adj_[v] : entity_adj_[v];
  }
  const std::map<Edge, double>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::vector<std::string> sentences_;
  std::vector<std::string> entities_;
  std::map<Edge, double> edges_;
  std::vector<std::vector<std::size_t>> sentence_adj_;
  std::vector<std::vector<std::size_t>> entity_adj_;
};

/// Edge (j, e) for every non-absent cell. With `role_weights`, the edge
/// weight is 3 for s, 2 for o, 1 for x; otherwise 1.
BipartiteGraph grid_to_bipartite(const entitygrid::EntityGrid& grid, bool role_weights = false);

/// One-mode projection. Edge keys are (u, v) with u < v.
struct ProjectedGraph {
  std::vector<std::string> vertices;
  std::map<std::pair<std::size_t, std::size_t>, double> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::vector<std::vector<std::size_t>> adjacency() const;
};

/// u and v are joined when they share a neighbour. Unweighted graphs give
/// the shared-neighbour count; weighted ones sum w(u,x)*w(v,x) over shared x.
ProjectedGraph project(const BipartiteGraph& g, Side side);

struct GraphMetrics {
  double avg_degree = 0.0;
  double clustering = 0.0;
  double avg_path_length = 0.0;  // largest component only
  std::size_t component_count = 0;
};

GraphMetrics graph_metrics(const ProjectedGraph& g);

/// Pairwise bipartite clustering per vertex, in [0, 1]. For v with
/// neighbours u, w: q(u,w) = |N(u) ∩ N(w) \ {v}| / |N(u) ∪ N(w) \ {v}|,
/// averaged over neighbour pairs. Fewer than two neighbours gives 0.
struct BipartiteClustering {
  std::vector<double> sentences;
  std::vector<double> entities;
};

BipartiteClustering bipartite_clustering(const BipartiteGraph& g);

enum class CoherenceMode { kProjection, kDirect };

/// Higher is more coherent. Projection mode: clustering of the sentence
/// projection. Direct mode: mean bipartite clustering of sentence vertices.
double coherence_score_bipartite(const entitygrid::EntityGrid& grid, CoherenceMode mode);

}  // namespace catenae::bipartite
