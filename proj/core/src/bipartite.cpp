#include "catenae/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::bipartite {

BipartiteGraph::BipartiteGraph(std::vector<std::string> sentence_labels,
                               std::vector<std::string> entity_labels,
                               const std::vector<std::pair<Edge, double>>& edges)
    : sentences_(std::move(sentence_labels)),
      entities_(std::move(entity_labels)),
      sentence_adj_(sentences_.size()),
      entity_adj_(entities_.size()) {
  for (const auto& [e, w] : edges) {
    if (e.first >= sentences_.size() || e.second >= entities_.size()) {
      throw ValidationError(fmt::format("bipartite edge ({}, {}) outside a {}x{} graph", e.first,
                                        e.second, sentences_.size(), entities_.size()));
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError(fmt::format("bipartite edge ({}, {}) has weight {}", e.first, e.second, w));
    }
    if (!edges_.emplace(e, w).second) {
      throw ValidationError(fmt::format("repeated bipartite edge ({}, {})", e.first, e.second));
    }
  }
  for (const auto& [e, _] : edges_) {
    sentence_adj_[e.first].push_back(e.second);
    entity_adj_[e.second].push_back(e.first);
  }
  for (auto& a : entity_adj_) std::sort(a.begin(), a.end());
}

BipartiteGraph grid_to_bipartite(const entitygrid::EntityGrid& grid, bool role_weights) {
  std::vector<std::string> sentences;
  for (std::size_t j = 0; j < grid.sentence_count(); ++j) sentences.push_back(fmt::format("s{}", j));
  std::vector<std::pair<BipartiteGraph::Edge, double>> edges;
  for (std::size_t e = 0; e < grid.entity_count(); ++e) {
    for (std::size_t j = 0; j < grid.sentence_count(); ++j) {
      const auto role = grid.cell(e, j);
      if (role == text::Role::kAbsent) continue;
      double w = 1.0;
      if (role_weights) {
        w = role == text::Role::kSubject ? 3.0 : role == text::Role::kObject ? 2.0 : 1.0;
      }
      edges.push_back({{j, e}, w});
    }
  }
  return BipartiteGraph(std::move(sentences), grid.entities(), edges);
}

std::vector<std::vector<std::size_t>> ProjectedGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& [e, _] : edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

ProjectedGraph project(const BipartiteGraph& g, Side side) {
  const Side other = side == Side::kSentences ? Side::kEntities : Side::kSentences;
  ProjectedGraph p;
  p.vertices = g.labels(side);
  auto weight = [&](std::size_t v, std::size_t x) {
    const auto key = side == Side::kSentences ? BipartiteGraph::Edge{v, x} : BipartiteGraph::Edge{x, v};
    return g.edges().at(key);
  };
  for (std::size_t x = 0; x < g.size(other); ++x) {
    const auto& n = g.neighbours(other, x);
    for (std::size_t i = 0; i < n.size(); ++i) {
      for (std::size_t j = i + 1; j < n.size(); ++j) {
        p.edges[{n[i], n[j]}] += weight(n[i], x) * weight(n[j], x);
      }
    }
  }
  return p;
}

GraphMetrics graph_metrics(const ProjectedGraph& g) {
  GraphMetrics m;
  const std::size_t n = g.vertex_count();
  if (n == 0) return m;
  const auto adj = g.adjacency();
  m.avg_degree = 2.0 * static_cast<double>(g.edges.size()) / static_cast<double>(n);

  double cc_sum = 0.0;
  std::size_t cc_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nv = adj[v];
    if (nv.size() < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < nv.size(); ++i) {
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        if (g.edges.contains({nv[i], nv[j]})) ++links;
      }
    }
    const double pairs = static_cast<double>(nv.size() * (nv.size() - 1) / 2);
    cc_sum += static_cast<double>(links) / pairs;
    ++cc_count;
  }
  m.clustering = cc_count == 0 ? 0.0 : cc_sum / static_cast<double>(cc_count);

  std::vector<std::size_t> component(n, n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] != n) continue;
    members.emplace_back();
    std::deque<std::size_t> queue{s};
    component[s] = members.size() - 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      members.back().push_back(v);
      for (auto w : adj[v]) {
        if (component[w] == n) {
          component[w] = component[s];
          queue.push_back(w);
        }
      }
    }
  }
  m.component_count = members.size();

  // Largest component; the earliest one wins ties.
  const auto& largest = *std::max_element(members.begin(), members.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  if (largest.size() < 2) return m;
  std::size_t total = 0, pairs = 0;
  std::vector<std::size_t> dist(n);
  for (auto s : largest) {
    std::fill(dist.begin(), dist.end(), n);
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : adj[v]) {
        if (dist[w] == n) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (auto t : largest) {
      if (t > s) {
        total += dist[t];
        ++pairs;
      }
    }
  }
  m.avg_path_length = static_cast<double>(total) / static_cast<double>(pairs);
  return m;
}

namespace {

std::vector<double> side_clustering(const BipartiteGraph& g, Side side) {
  const Side other = side == Side::kSentences ? Side::kEntities : Side::kSentences;
  std::vector<double> out(g.size(side), 0.0);
  std::vector<std::size_t> inter, uni;
  for (std::size_t v = 0; v < g.size(side); ++v) {
    const auto& nv = g.neighbours(side, v);
    if (nv.size() < 2) continue;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < nv.size(); ++i) {
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        const auto& a = g.neighbours(other, nv[i]);
        const auto& b = g.neighbours(other, nv[j]);
        inter.clear();
        uni.clear();
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
        // v lies in both neighbourhoods, so it is in both sets.
        const std::size_t shared = inter.size() - 1;
        const std::size_t joint = uni.size() - 1;
        if (joint > 0) sum += static_cast<double>(shared) / static_cast<double>(joint);
        ++pairs;
      }
    }
    out[v] = sum / static_cast<double>(pairs);
  }
  return out;
}

}  // namespace

BipartiteClustering bipartite_clustering(const BipartiteGraph& g) {
  return {side_clustering(g, Side::kSentences), side_clustering(g, Side::kEntities)};
}

double coherence_score_bipartite(const entitygrid::EntityGrid& grid, CoherenceMode mode) {
  const auto g = grid_to_bipartite(grid);
  if (mode == CoherenceMode::kProjection) return graph_metrics(project(g, Side::kSentences)).clustering;
  const auto cc = side_clustering(g, Side::kSentences);
  if (cc.empty()) return 0.0;
  double total = 0.0;
  for (double c : cc) total += c;
  return total / static_cast<double>(cc.size());
}

}  // namespace catenae::bipartite
