#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "catenae/error.hpp"
#include "catenae/graphrank.hpp"
#include "catenae/text.hpp"
#include "oracles.hpp"

using namespace catenae;
using namespace catenae::graphrank;

namespace {

double total(const TermWeights& tw) {
  double s = 0.0;
  for (const auto& [_, w] : tw.weights) s += w;
  return s;
}

WordGraph graph_of(const std::string& raw, std::size_t window) {
  return build_word_graph(text::make_document("d", raw, {}, {}), window);
}

}  // namespace

TEST(WordGraph, CountsRepeatedCooccurrence) {
  const auto g = graph_of("a b a", 2);
  EXPECT_EQ(g.vertices(), (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.0);
}

TEST(WordGraph, FromEdgesValidates) {
  EXPECT_THROW(WordGraph::from_edges({"a", "a"}, false, {}), ValidationError);
  EXPECT_THROW(WordGraph::from_edges({"a", "b"}, false, {{{0, 0}, 1.0}}), ValidationError);
  EXPECT_THROW(WordGraph::from_edges({"a", "b"}, false, {{{0, 2}, 1.0}}), ValidationError);
  EXPECT_THROW(WordGraph::from_edges({"a", "b"}, false, {{{0, 1}, 0.0}}), ValidationError);
  const auto g = WordGraph::from_edges({"b", "a"}, false, {{{0, 1}, 1.0}, {{1, 0}, 2.0}});
  EXPECT_EQ(g.vertices(), (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 3.0);
}

TEST(WordGraph, DirectedNeedsAnnotations) {
  const auto doc = text::make_document("d", "black cat", {}, {});
  EXPECT_THROW(build_word_graph(doc, 2, EdgeMode::kDirectedByAnnotation, nullptr), ParameterError);
  text::AnnotationSet ann;
  ann.modifiers.push_back({"cat", "black"});
  const auto g = build_word_graph(doc, 2, EdgeMode::kDirectedByAnnotation, &ann);
  const auto black = *g.index_of("black");
  const auto cat = *g.index_of("cat");
  EXPECT_DOUBLE_EQ(g.weight(black, cat), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(cat, black), 0.0);
  // Unlinked pairs become two opposite arcs.
  const auto g2 = build_word_graph(text::make_document("d", "big dog", {}, {}), 2,
                                   EdgeMode::kDirectedByAnnotation, &ann);
  EXPECT_DOUBLE_EQ(g2.weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g2.weight(1, 0), 1.0);
}

TEST(PageRank, PathOracle) {
  // Frozen from the exact linear solve: a = c = 0.07125/0.2775, b = 0.05 + 1.7 a.
  const auto tw = rank_vertices(graph_of("a b c", 2));
  EXPECT_NEAR(tw.weights.at("a"), 0.256757, 1e-6);
  EXPECT_NEAR(tw.weights.at("b"), 0.486486, 1e-6);
  EXPECT_NEAR(tw.weights.at("c"), 0.256757, 1e-6);
  // A bipartite graph oscillates; the error shrinks by d per step, so 100
  // iterations end just short of 1e-8.
  EXPECT_FALSE(tw.converged);
  EXPECT_NEAR(total(tw), 1.0, 1e-12);
}

TEST(PageRank, CycleIsUniformAndStarHubDominates) {
  const auto cycle = rank_vertices(WordGraph::from_edges({"a", "b", "c"}, false,
                                                         {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{0, 2}, 1.0}}));
  for (const auto& [_, w] : cycle.weights) EXPECT_NEAR(w, 1.0 / 3.0, 1e-8);
  EXPECT_TRUE(cycle.converged);

  std::vector<std::pair<WordGraph::Edge, double>> edges;
  std::vector<std::string> names{"hub"};
  for (std::size_t i = 1; i <= 6; ++i) {
    names.push_back("leaf" + std::to_string(i));
    edges.push_back({{0, i}, 1.0});
  }
  const auto star = rank_vertices(WordGraph::from_edges(names, false, edges));
  for (const auto& [t, w] : star.weights) {
    if (t != "hub") EXPECT_GT(star.weights.at("hub"), w);
  }
}

TEST(PageRank, MatchesExactSolveOnRandomGraphs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    const bool directed = trial % 2 == 1;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<WordGraph::Edge, double>> edges;
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v || (!directed && v < u) || rng() % 3 != 0) continue;
        const double weight = 1.0 + static_cast<double>(rng() % 4);
        edges.push_back({{u, v}, weight});
        w[u][v] += weight;
        if (!directed) w[v][u] += weight;
      }
    }
    const auto g = WordGraph::from_edges(names, directed, edges);
    const auto tw = rank_vertices(g);
    const auto exact = oracle::pagerank_exact(w, 0.85);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(tw.weights.at(names[i]), exact[i], 1e-6);
    EXPECT_NEAR(total(tw), 1.0, 1e-9);
  }
}

TEST(PageRank, ParametersValidated) {
  const auto g = graph_of("a b", 2);
  EXPECT_THROW(rank_vertices(g, {1.0, 1e-8, 100, Centrality::kPageRank}), ParameterError);
  EXPECT_THROW(rank_vertices(g, {-0.1, 1e-8, 100, Centrality::kPageRank}), ParameterError);
  EXPECT_THROW(rank_vertices(g, {0.85, 0.0, 100, Centrality::kPageRank}), ParameterError);
  EXPECT_THROW(rank_vertices(g, {0.85, 1e-8, 0, Centrality::kPageRank}), ParameterError);
  EXPECT_THROW(rank_vertices(WordGraph{}), DomainError);
}

TEST(PageRank, IterationCapReportsNonConvergence) {
  const auto tw = rank_vertices(graph_of("a b c d e f", 2), {0.85, 1e-15, 2, Centrality::kPageRank});
  EXPECT_FALSE(tw.converged);
  EXPECT_EQ(tw.iterations_used, 2u);
  EXPECT_NEAR(total(tw), 1.0, 1e-12);
}

TEST(PageRank, WeightedDegreeNormalizes) {
  const auto tw = rank_vertices(graph_of("a b a c", 2), {0.85, 1e-8, 100, Centrality::kWeightedDegree});
  // a: 2 (a-b) + 1 (a-c) = 3 of total degree 6.
  EXPECT_DOUBLE_EQ(tw.weights.at("a"), 0.5);
  EXPECT_DOUBLE_EQ(tw.weights.at("b"), 2.0 / 6.0);
}

TEST(PageRank, SelfConcatenationKeepsWeights) {
  // Sentence-final text: the copy adds no window across the seam, so every
  // edge weight doubles exactly.
  const std::string raw = "The whale swam past the old ship and the ship sank.";
  const auto once = rank_vertices(graph_of(raw, 3));
  const auto twice = rank_vertices(graph_of(raw + " " + raw, 3));
  ASSERT_EQ(once.weights.size(), twice.weights.size());
  for (const auto& [t, w] : once.weights) EXPECT_NEAR(twice.weights.at(t), w, 1e-9);
}

TEST(TwScore, HandComputed) {
  TermWeights tw;
  tw.weights = {{"a", 0.5}, {"b", 0.3}, {"c", 0.2}};
  const std::unordered_map<std::string, std::size_t> df{{"a", 2}, {"b", 1}, {"c", 9}};
  // |V| = 3, k = 1: a -> 0.5/(0.5 + 1/3) * ln(11/2.5).
  const double expected = 0.5 / (0.5 + 1.0 / 3.0) * std::log(11.0 / 2.5);
  EXPECT_NEAR(tw_score({"a", "zzz"}, tw, 10, df), expected, 1e-12);
  EXPECT_NEAR(tw_score({"a", "a"}, tw, 10, df), expected, 1e-12);
  EXPECT_DOUBLE_EQ(tw_score({"zzz"}, tw, 10, df), 0.0);
  EXPECT_THROW(tw_score({"a"}, tw, 10, {}), DomainError);
}
