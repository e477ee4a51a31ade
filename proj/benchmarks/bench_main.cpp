#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include <random>

#include "catenae/bipartite.hpp"
#include "catenae/graphrank.hpp"
#include "catenae/metrics.hpp"
#include "catenae/slogic.hpp"

using namespace catenae;

namespace {

graphrank::WordGraph random_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(fmt::format("t{:05}", i));
  std::vector<std::pair<graphrank::WordGraph::Edge, double>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (int k = 0; k < 8; ++k) {
      const std::size_t v = rng() % n;
      if (v != u) edges.push_back({{u, v}, 1.0});
    }
  }
  return graphrank::WordGraph::from_edges(names, false, edges);
}

void BM_PageRank(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(graphrank::rank_vertices(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PageRank)->Range(64, 4096)->Complexity();

void BM_Consensus(benchmark::State& state) {
  slogic::Opinion acc = slogic::Opinion::vacuous();
  const slogic::Opinion w{0.3, 0.2, 0.5, 0.5};
  for (auto _ : state) {
    acc = slogic::consensus(w, slogic::Opinion::vacuous());
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_Consensus);

void BM_Ndcg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> run;
  retrieval::Qrels::Judgments judged;
  for (std::size_t i = 0; i < n; ++i) {
    run.push_back(fmt::format("d{}", i));
    if (i % 3 == 0) judged[run.back()] = static_cast<int>(i % 4);
  }
  for (auto _ : state) benchmark::DoNotOptimize(retrieval::ndcg_at_k(run, judged, n));
}
BENCHMARK(BM_Ndcg)->Range(10, 1000);

void BM_Projection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<std::string> sentences, entities;
  for (std::size_t i = 0; i < n; ++i) sentences.push_back(fmt::format("s{}", i));
  for (std::size_t i = 0; i < n / 2 + 1; ++i) entities.push_back(fmt::format("e{}", i));
  std::vector<std::pair<bipartite::BipartiteGraph::Edge, double>> edges;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = 0; e < entities.size(); ++e) {
      if (rng() % 5 == 0) edges.push_back({{s, e}, 1.0});
    }
  }
  const bipartite::BipartiteGraph g(sentences, entities, edges);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bipartite::project(g, bipartite::Side::kSentences));
    benchmark::DoNotOptimize(bipartite::bipartite_clustering(g));
  }
}
BENCHMARK(BM_Projection)->Range(8, 128);

}  // namespace
BENCHMARK_MAIN();
