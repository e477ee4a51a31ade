#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "catenae/error.hpp"
#include "catenae/metrics.hpp"
#include "oracles.hpp"

using namespace catenae;
using namespace catenae::retrieval;

namespace {

Qrels::Judgments judged(const oracle::Judged& j) { return {j.begin(), j.end()}; }

}  // namespace

TEST(Metrics, WorkedExample) {
  const std::vector<std::string> run{"d1", "d2", "d3", "d4", "d5"};
  const oracle::Judged j{{"d1", 0}, {"d2", 2}, {"d4", 1}, {"d6", 1}};
  const auto jj = judged(j);
  EXPECT_DOUBLE_EQ(precision_at_k(run, jj, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(precision_at_k(run, jj, 10), 0.2);
  EXPECT_DOUBLE_EQ(reciprocal_rank(run, jj), 0.5);
  // One judged non-relevant above every relevant hit; R = 3, N = 1.
  EXPECT_DOUBLE_EQ(bpref(run, jj), 0.0);
  // (3/log2 3 + 1/log2 5) / (3 + 1/log2 3 + 1/2)
  EXPECT_NEAR(ndcg_at_k(run, jj, 5), 0.562456, 1e-6);
  // 0 + (1)(3/4) at rank 2 /2, then (1/4)(1/4)/4
  EXPECT_NEAR(err_at_k(run, jj, 5, 2), 0.375 + 0.015625, 1e-12);
  EXPECT_THROW(precision_at_k(run, jj, 0), ParameterError);
}

TEST(Metrics, NoRelevantGivesZero) {
  const std::vector<std::string> run{"a", "b"};
  const Qrels::Judgments none{{"a", 0}};
  EXPECT_EQ(bpref(run, none), 0.0);
  EXPECT_EQ(ndcg_at_k(run, none, 10), 0.0);
  EXPECT_EQ(reciprocal_rank(run, none), 0.0);
}

TEST(Metrics, MatchOraclesOnRandomRuns) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> docs;
    const std::size_t n = 1 + rng() % 15;
    for (std::size_t i = 0; i < n; ++i) docs.push_back("d" + std::to_string(i));
    oracle::Judged j;
    for (std::size_t i = 0; i < n + 3; ++i) {
      if (rng() % 3 == 0) continue;
      j["d" + std::to_string(i)] = static_cast<int>(rng() % 4);
    }
    std::shuffle(docs.begin(), docs.end(), rng);
    docs.resize(1 + rng() % n);
    const auto jj = judged(j);
    int gmax = 0;
    for (const auto& [_, g] : j) gmax = std::max(gmax, g);
    const std::size_t k = 1 + rng() % 12;
    EXPECT_NEAR(precision_at_k(docs, jj, k), oracle::precision(docs, j, k), 1e-12);
    EXPECT_NEAR(reciprocal_rank(docs, jj), oracle::rr(docs, j), 1e-12);
    EXPECT_NEAR(bpref(docs, jj), oracle::bpref(docs, j), 1e-12);
    EXPECT_NEAR(ndcg_at_k(docs, jj, k), oracle::ndcg(docs, j, k), 1e-12);
    EXPECT_NEAR(err_at_k(docs, jj, k, gmax), oracle::err(docs, j, k, gmax), 1e-12);
  }
}

TEST(Metrics, MetricsAreBounded) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> docs;
    oracle::Judged j;
    for (std::size_t i = 0; i < 8; ++i) {
      docs.push_back("d" + std::to_string(i));
      j[docs.back()] = static_cast<int>(rng() % 3);
    }
    std::shuffle(docs.begin(), docs.end(), rng);
    const auto jj = judged(j);
    for (double v : {bpref(docs, jj), ndcg_at_k(docs, jj, 5), err_at_k(docs, jj, 5, 2)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Kendall, MatchesPairEnumeration) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> a;
    const std::size_t n = 2 + rng() % 9;
    for (std::size_t i = 0; i < n; ++i) a.push_back(std::string(1, static_cast<char>('a' + i)));
    auto b = a;
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_NEAR(kendall_tau(a, b), oracle::kendall(a, b), 1e-12);
  }
  const std::vector<std::size_t> rev{2, 1, 0};
  EXPECT_DOUBLE_EQ(kendall_tau(rev), -1.0);
  EXPECT_THROW(kendall_tau(std::vector<std::size_t>{0}), UndefinedMetricError);
  EXPECT_THROW(kendall_tau(std::vector<std::size_t>{0, 0}), ValidationError);
  const std::vector<std::string> x{"a", "b"}, y{"a", "c"};
  EXPECT_THROW(kendall_tau(x, y), ValidationError);
}

TEST(MetricSpec, ParseAndEvaluateRuns) {
  EXPECT_EQ(parse_metric("NDCG@5").k, 5u);
  EXPECT_EQ(parse_metric("bpref").kind, MetricKind::kBpref);
  EXPECT_EQ(to_string(parse_metric("p@3")), "p@3");
  EXPECT_THROW(parse_metric("map"), ParameterError);
  EXPECT_THROW(parse_metric("p@0"), ParameterError);

  Qrels qrels;
  qrels.add("q1", "a", 1);
  qrels.add("q1", "b", 0);
  EXPECT_THROW(qrels.add("q1", "c", -1), ValidationError);
  EXPECT_THROW(qrels.for_query("q9"), UndefinedMetricError);
  RankedRun r1{"q1", {{"b", 2.0}, {"a", 1.0}}, "t"};
  RankedRun r2{"q2", {{"a", 1.0}}, "t"};
  const auto report = evaluate_runs({r1, r2}, qrels, parse_metric("mrr"));
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(report.mean, 0.5);
  EXPECT_EQ(report.skipped, (std::vector<std::string>{"q2"}));
}
