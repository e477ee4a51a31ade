#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "catenae/entitygrid.hpp"
#include "catenae/error.hpp"
#include "oracles.hpp"

using namespace catenae;
using namespace catenae::entitygrid;
using text::EntityMention;

namespace {

std::vector<Role> roles(const std::string& s) {
  std::vector<Role> out;
  for (char c : s) out.push_back(text::role_from_char(c));
  return out;
}

std::vector<EntityMention> random_mentions(std::mt19937& rng, std::size_t sentences,
                                           std::size_t entities) {
  std::vector<EntityMention> out;
  const char* rs = "sox";
  for (std::size_t j = 0; j < sentences; ++j) {
    for (std::size_t e = 0; e < entities; ++e) {
      if (rng() % 3 == 0) out.push_back({j, "e" + std::to_string(e), text::role_from_char(rs[rng() % 3])});
    }
  }
  return out;
}

}  // namespace

TEST(Grid, RolePriorityAndFirstMentionOrder) {
  const std::vector<EntityMention> m{
      {1, "zed", Role::kOther}, {0, "amy", Role::kObject}, {0, "amy", Role::kSubject}, {1, "zed", Role::kObject}};
  const auto g = build_grid(3, m);
  EXPECT_EQ(g.entities(), (std::vector<std::string>{"amy", "zed"}));
  EXPECT_EQ(g.cell(0, 0), Role::kSubject);
  EXPECT_EQ(g.cell(1, 1), Role::kObject);
  EXPECT_EQ(g.cell(1, 2), Role::kAbsent);
  EXPECT_EQ(g.mention_count(0), 1u);
  EXPECT_THROW(build_grid(1, m), ValidationError);
}

TEST(Entropy, HandValues) {
  EXPECT_DOUBLE_EQ(row_entropy(roles("sss"), EntropyMode::kSymbol), 0.0);
  EXPECT_DOUBLE_EQ(row_entropy(roles("so"), EntropyMode::kSymbol), 1.0);
  EXPECT_DOUBLE_EQ(row_entropy(roles("sox-"), EntropyMode::kSymbol), 2.0);
  EXPECT_NEAR(row_entropy(roles("sox-"), EntropyMode::kTransition), std::log2(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(row_entropy(roles("ssss"), EntropyMode::kTransition), 0.0);
  EXPECT_DOUBLE_EQ(row_entropy(roles("s"), EntropyMode::kTransition), 0.0);
}

TEST(Entropy, MatchesShannonOracle) {
  std::mt19937 rng(17);
  const std::string alphabet = "sox-";
  for (int trial = 0; trial < 200; ++trial) {
    std::string row;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) row += alphabet[rng() % 4];
    std::vector<double> sym(4, 0.0), tr(16, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      sym[alphabet.find(row[i])] += 1.0;
      if (i + 1 < n) tr[4 * alphabet.find(row[i]) + alphabet.find(row[i + 1])] += 1.0;
    }
    EXPECT_NEAR(row_entropy(roles(row), EntropyMode::kSymbol), oracle::shannon_bits(sym), 1e-12);
    if (n >= 2) EXPECT_NEAR(row_entropy(roles(row), EntropyMode::kTransition), oracle::shannon_bits(tr), 1e-12);
    EXPECT_LE(row_entropy(roles(row), EntropyMode::kSymbol), 2.0 + 1e-12);
  }
}

TEST(Coherence, WeightedMeanOfCatenae) {
  const std::vector<EntityMention> m{{0, "a", Role::kSubject}, {1, "a", Role::kSubject},
                                     {0, "b", Role::kObject}};
  const auto g = build_grid(2, m);
  EXPECT_DOUBLE_EQ(catena_entropy(g, "a"), 0.0);
  EXPECT_DOUBLE_EQ(catena_entropy(g, "b"), 1.0);
  EXPECT_THROW(catena_entropy(g, "nobody"), LookupError);
  // Mentions weight a twice as much as b.
  EXPECT_NEAR(doc_coherence_entropy(g).value, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(doc_coherence_entropy(g, EntropyMode::kSymbol, Weighting::kUniform).value, 0.5, 1e-12);
  const auto empty = doc_coherence_entropy(build_grid(3, {}));
  EXPECT_TRUE(empty.degenerate);
  EXPECT_EQ(empty.value, 0.0);
}

TEST(Permute, MentionsAndColumnsAgree) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const auto mentions = random_mentions(rng, n, 4);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto by_mentions = build_grid(n, permute_mentions(mentions, order));
    const auto by_columns = permute_columns(build_grid(n, mentions), order);
    ASSERT_EQ(by_mentions.entity_count(), by_columns.entity_count());
    for (std::size_t e = 0; e < by_columns.entity_count(); ++e) {
      const auto row = by_mentions.find(by_columns.entities()[e]);
      ASSERT_TRUE(row.has_value());
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(by_mentions.cell(*row, j), by_columns.cell(e, j));
    }
    // Score is invariant to row order.
    EXPECT_NEAR(doc_coherence_entropy(by_mentions, EntropyMode::kTransition).value,
                doc_coherence_entropy(by_columns, EntropyMode::kTransition).value, 1e-12);
  }
  const std::vector<std::size_t> bad{0, 0};
  EXPECT_THROW(permute_mentions(std::vector<EntityMention>{}, bad), ValidationError);
}

TEST(Permutations, DistinctNonIdentityAndDeterministic) {
  const auto p = sample_permutations(4, 10, 42);
  EXPECT_EQ(p.size(), 10u);
  std::set<std::vector<std::size_t>> seen(p.begin(), p.end());
  EXPECT_EQ(seen.size(), p.size());
  for (const auto& perm : p) {
    EXPECT_FALSE(std::is_sorted(perm.begin(), perm.end()));
    EXPECT_TRUE(std::is_permutation(perm.begin(), perm.end(), std::vector<std::size_t>{0, 1, 2, 3}.begin()));
  }
  EXPECT_EQ(sample_permutations(4, 10, 42), p);
  EXPECT_NE(sample_permutations(4, 10, 43), p);
  EXPECT_EQ(sample_permutations(3, 100, 1).size(), 5u);
}

TEST(Reorder, ChainDocumentIsAlwaysRecognized) {
  // Entity k is the subject of sentences 2k..2k+3, a smooth hand-off.
  std::vector<EntityMention> m;
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t j = 2 * k; j < 2 * k + 4 && j < 12; ++j) m.push_back({j, "e" + std::to_string(k), Role::kSubject});
  }
  const auto r = reorder_eval(12, m);
  EXPECT_EQ(r.permuted_scores.size(), 20u);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_EQ(reorder_eval(12, m).permuted_scores, r.permuted_scores);
  ReorderOptions zero;
  zero.shuffles = 0;
  EXPECT_THROW(reorder_eval(12, m, zero), ParameterError);
  EXPECT_THROW(reorder_eval(2, {}), DomainError);
}
