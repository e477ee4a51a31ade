#include "catenae/graphrank.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::graphrank {

WordGraph WordGraph::from_edges(std::vector<std::string> vertices, bool directed,
                                const std::vector<std::pair<Edge, double>>& edges) {
  // Vertices are stored sorted, so remap the caller's indices.
  std::vector<std::size_t> order(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vertices[a] < vertices[b]; });
  std::vector<std::size_t> remap(vertices.size());
  WordGraph g;
  g.directed_ = directed;
  g.vertices_.reserve(vertices.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    g.vertices_.push_back(std::move(vertices[order[rank]]));
  }
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
    if (!g.index_.emplace(g.vertices_[i], i).second) {
      throw ValidationError(fmt::format("duplicate vertex '{}'", g.vertices_[i]));
    }
  }
  for (const auto& [edge, w] : edges) {
    auto [u, v] = edge;
    if (u >= remap.size() || v >= remap.size()) {
      throw ValidationError(fmt::format("edge ({}, {}) references a missing vertex", u, v));
    }
    if (u == v) throw ValidationError("self-loops are not allowed in a word graph");
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError(fmt::format("edge weight must be positive and finite, got {}", w));
    }
    u = remap[u];
    v = remap[v];
    if (!directed && u > v) std::swap(u, v);
    g.edges_[{u, v}] += w;
  }
  return g;
}

std::optional<std::size_t> WordGraph::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WordGraph::weight(std::size_t u, std::size_t v) const {
  if (!directed_ && u > v) std::swap(u, v);
  const auto it = edges_.find({u, v});
  return it == edges_.end() ? 0.0 : it->second;
}

WordGraph build_word_graph(const text::Document& doc, std::size_t window_size, EdgeMode mode,
                           const text::AnnotationSet* annotations) {
  const auto pairs = text::extract_windows(doc, window_size);
  if (mode == EdgeMode::kDirectedByAnnotation && annotations == nullptr) {
    throw ParameterError("directed word graphs need an annotation set with modifier links");
  }

  std::vector<std::string> terms;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& t : doc.tokens) {
    if (index.emplace(t.normalized, terms.size()).second) terms.push_back(t.normalized);
  }

  // (dependent, head) pairs.
  std::set<std::pair<std::string, std::string>> arcs;
  if (annotations != nullptr) {
    for (const auto& m : annotations->modifiers) arcs.emplace(m.dependent, m.head);
  }

  std::vector<std::pair<WordGraph::Edge, double>> edges;
  edges.reserve(pairs.size());
  const bool directed = mode == EdgeMode::kDirectedByAnnotation;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    const std::size_t u = index.at(a);
    const std::size_t v = index.at(b);
    if (!directed) {
      edges.push_back({{u, v}, 1.0});
      continue;
    }
    const bool forward = arcs.contains({a, b});
    const bool backward = arcs.contains({b, a});
    if (forward || !backward) edges.push_back({{u, v}, 1.0});
    if (backward || !forward) edges.push_back({{v, u}, 1.0});
  }
  return WordGraph::from_edges(std::move(terms), directed, edges);
}

std::vector<std::pair<std::string, double>> TermWeights::sorted() const {
  std::vector<std::pair<std::string, double>> out(weights.begin(), weights.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

namespace {

struct Arc {
  std::size_t target;
  double weight;
};

std::vector<std::vector<Arc>> out_arcs(const WordGraph& g) {
  std::vector<std::vector<Arc>> out(g.vertex_count());
  for (const auto& [edge, w] : g.edges()) {
    out[edge.first].push_back({edge.second, w});
    if (!g.directed()) out[edge.second].push_back({edge.first, w});
  }
  return out;
}

TermWeights to_weights(const WordGraph& g, std::vector<double> scores) {
  double total = 0.0;
  for (double s : scores) total += s;
  TermWeights tw;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    tw.weights.emplace(g.vertices()[i], scores[i] / total);
  }
  return tw;
}

TermWeights weighted_degree(const WordGraph& g) {
  std::vector<double> degree(g.vertex_count(), 0.0);
  double total = 0.0;
  for (const auto& [edge, w] : g.edges()) {
    degree[edge.first] += w;
    degree[edge.second] += w;
    total += 2.0 * w;
  }
  if (total == 0.0) std::fill(degree.begin(), degree.end(), 1.0);
  TermWeights tw = to_weights(g, std::move(degree));
  tw.converged = true;
  return tw;
}

}  // namespace

TermWeights rank_vertices(const WordGraph& graph, const RankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw ParameterError(fmt::format("damping must lie in (0, 1), got {}", options.damping));
  }
  if (!(options.tolerance > 0.0)) {
    throw ParameterError(fmt::format("tolerance must be positive, got {}", options.tolerance));
  }
  if (options.max_iterations == 0) throw ParameterError("max_iterations must be positive");
  if (graph.empty()) throw DomainError("cannot rank the vertices of an empty graph");

  if (options.centrality == Centrality::kWeightedDegree) return weighted_degree(graph);

  const std::size_t n = graph.vertex_count();
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto arcs = out_arcs(graph);
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const Arc& a : arcs[u]) out_weight[u] += a.weight;
  }

  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  std::size_t iter = 0;
  bool converged = false;
  while (iter < options.max_iterations) {
    ++iter;
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (out_weight[u] == 0.0) dangling += rank[u];
    }
    const double base = (1.0 - options.damping) * inv_n + options.damping * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t u = 0; u < n; ++u) {
      if (out_weight[u] == 0.0) continue;
      const double share = options.damping * rank[u] / out_weight[u];
      for (const Arc& a : arcs[u]) next[a.target] += share * a.weight;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }

  TermWeights tw = to_weights(graph, std::move(rank));
  tw.iterations_used = iter;
  tw.converged = converged;
  return tw;
}

double tw_score(const std::vector<std::string>& query_terms, const TermWeights& doc_weights,
                std::size_t doc_count, const std::unordered_map<std::string, std::size_t>& df,
                double k) {
  if (!(k > 0.0)) throw ParameterError(fmt::format("saturation k must be positive, got {}", k));
  const double vertices = static_cast<double>(doc_weights.vertex_count());
  std::set<std::string_view> seen;
  double score = 0.0;
  for (const auto& term : query_terms) {
    if (!seen.insert(term).second) continue;
    const auto w = doc_weights.weights.find(term);
    if (w == doc_weights.weights.end()) continue;
    const auto d = df.find(term);
    if (d == df.end() || d->second == 0) {
      throw DomainError(fmt::format("no document frequency for scored term '{}'", term));
    }
    const double tw = w->second / (w->second + k / vertices);
    const double idf = std::log((static_cast<double>(doc_count) + 1.0) /
                                (static_cast<double>(d->second) + 0.5));
    score += tw * idf;
  }
  return score;
}

}  // namespace catenae::graphrank
