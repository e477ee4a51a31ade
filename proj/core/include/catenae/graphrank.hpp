#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catenae/annotations.hpp"
#include "catenae/text.hpp"

namespace catenae::graphrank {

enum class EdgeMode { kUndirected, kDirectedByAnnotation };

enum class Centrality { kPageRank, kWeightedDegree };

/// Graph of words: one vertex per unique normalized term, edges weighted by
/// co-occurrence counts. Immutable once built.
class WordGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;
  using EdgeMap = std::map<Edge, double>;

  WordGraph() = default;

  /// Validates and builds a graph from explicit edges. Vertex names must be
  /// unique. Rejects self-loops, unknown endpoints, and non-positive weights.
  /// Undirected edges are folded onto (min, max); repeated edges accumulate.
  static WordGraph from_edges(std::vector<std::string> vertices, bool directed,
                              const std::vector<std::pair<Edge, double>>& edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const EdgeMap& edges() const { return edges_; }
  bool directed() const { return directed_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  std::optional<std::size_t> index_of(std::string_view term) const;
  /// Weight of u->v (or {u,v} when undirected); 0 when absent.
  double weight(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::string> vertices_;  // sorted
  std::unordered_map<std::string, std::size_t> index_;
  EdgeMap edges_;
  bool directed_ = false;
};

/// Builds the graph of words of `doc` from sentence-bounded co-occurrence
/// windows. In kDirectedByAnnotation mode, `annotations` supplies modifier
/// links; a co-occurring pair becomes the arc dependent->head when a link
/// exists and a pair of opposite arcs otherwise.
WordGraph build_word_graph(const text::Document& doc, std::size_t window_size,
                           EdgeMode mode = EdgeMode::kUndirected,
                           const text::AnnotationSet* annotations = nullptr);

struct RankOptions {
  double damping = 0.85;
  double tolerance = 1e-8;
  std::size_t max_iterations = 100;
  Centrality centrality = Centrality::kPageRank;
};

struct TermWeights {
  std::map<std::string, double> weights;
  std::size_t iterations_used = 0;
  bool converged = false;

  std::size_t vertex_count() const { return weights.size(); }
  /// (term, weight) sorted by weight descending, then term ascending.
  std::vector<std::pair<std::string, double>> sorted() const;
};

/// Weighted PageRank by power iteration. Dangling mass is spread uniformly;
/// stops when the L1 change falls below the tolerance. Output sums to 1.
TermWeights rank_vertices(const WordGraph& graph, const RankOptions& options = {});

/// Saturated graph weight times idf, summed over unique query terms present
/// in the document:  tw/(tw + k/|V|) * ln((N + 1)/(df + 0.5)).
double tw_score(const std::vector<std::string>& query_terms, const TermWeights& doc_weights,
                std::size_t doc_count, const std::unordered_map<std::string, std::size_t>& df,
                double k = 1.0);

}  // namespace catenae::graphrank
