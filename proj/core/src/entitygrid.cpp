#include "catenae/entitygrid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::entitygrid {

namespace {

int priority(Role r) {
  switch (r) {
    case Role::kSubject: return 3;
    case Role::kObject: return 2;
    case Role::kOther: return 1;
    case Role::kAbsent: return 0;
  }
  return 0;
}

std::size_t symbol_index(Role r) {
  switch (r) {
    case Role::kSubject: return 0;
    case Role::kObject: return 1;
    case Role::kOther: return 2;
    case Role::kAbsent: return 3;
  }
  return 3;
}

template <std::size_t N>
double entropy_of(const std::array<std::size_t, N>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

void check_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) {
    throw ValidationError(fmt::format("permutation has {} entries, expected {}", order.size(), n));
  }
  std::vector<bool> seen(n, false);
  for (auto o : order) {
    if (o >= n || seen[o]) throw ValidationError("sentence order is not a permutation");
    seen[o] = true;
  }
}

// Uniform draw in [0, bound) without modulo bias; independent of the
// standard library's distribution implementation.
std::size_t bounded(std::mt19937_64& gen, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

}  // namespace

EntityGrid::EntityGrid(std::vector<std::string> entities, std::size_t sentence_count)
    : entities_(std::move(entities)),
      sentences_(sentence_count),
      cells_(entities_.size() * sentence_count, Role::kAbsent) {}

std::optional<std::size_t> EntityGrid::find(std::string_view entity_id) const {
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    if (entities_[i] == entity_id) return i;
  }
  return std::nullopt;
}

std::size_t EntityGrid::mention_count(std::size_t entity) const {
  const auto r = row(entity);
  return static_cast<std::size_t>(
      std::count_if(r.begin(), r.end(), [](Role c) { return c != Role::kAbsent; }));
}

void EntityGrid::place(std::size_t entity, std::size_t sentence, Role role) {
  Role& c = cells_[entity * sentences_ + sentence];
  if (priority(role) > priority(c)) c = role;
}

EntityGrid build_grid(std::size_t sentence_count, std::span<const text::EntityMention> mentions) {
  std::vector<std::string> entities;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& m : mentions) {
    if (m.sentence_index >= sentence_count) {
      throw ValidationError(fmt::format("mention of '{}' in sentence {} but the document has {} sentences",
                                        m.entity_id, m.sentence_index, sentence_count));
    }
    if (m.role == Role::kAbsent) {
      throw ValidationError(fmt::format("mention of '{}' has no role", m.entity_id));
    }
    if (index.emplace(m.entity_id, entities.size()).second) entities.push_back(m.entity_id);
  }
  // Rows follow first mention in text order, not annotation-file order.
  std::vector<std::size_t> first(entities.size(), sentence_count);
  for (const auto& m : mentions) {
    auto& f = first[index[m.entity_id]];
    f = std::min(f, m.sentence_index);
  }
  std::vector<std::size_t> order(entities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
  std::vector<std::string> sorted;
  sorted.reserve(entities.size());
  for (auto o : order) sorted.push_back(entities[o]);
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = i;

  EntityGrid grid(std::move(sorted), sentence_count);
  for (const auto& m : mentions) grid.place(index[m.entity_id], m.sentence_index, m.role);
  return grid;
}

EntityGrid build_grid(const text::Document& doc, const text::AnnotationSet& annotations) {
  return build_grid(doc.sentence_count(), annotations.entity_mentions);
}

std::vector<text::EntityMention> permute_mentions(std::span<const text::EntityMention> mentions,
                                                  std::span<const std::size_t> order) {
  std::vector<std::size_t> inverse(order.size());
  check_permutation(order, order.size());
  for (std::size_t j = 0; j < order.size(); ++j) inverse[order[j]] = j;
  std::vector<text::EntityMention> out(mentions.begin(), mentions.end());
  for (auto& m : out) {
    if (m.sentence_index >= order.size()) {
      throw ValidationError(fmt::format("mention sentence {} outside permutation of size {}",
                                        m.sentence_index, order.size()));
    }
    m.sentence_index = inverse[m.sentence_index];
  }
  return out;
}

EntityGrid permute_columns(const EntityGrid& grid, std::span<const std::size_t> order) {
  check_permutation(order, grid.sentence_count());
  EntityGrid out(grid.entities(), grid.sentence_count());
  for (std::size_t e = 0; e < grid.entity_count(); ++e) {
    for (std::size_t j = 0; j < order.size(); ++j) out.place(e, j, grid.cell(e, order[j]));
  }
  return out;
}

double row_entropy(std::span<const Role> row, EntropyMode mode) {
  if (mode == EntropyMode::kSymbol) {
    std::array<std::size_t, 4> counts{};
    for (Role r : row) ++counts[symbol_index(r)];
    return entropy_of(counts);
  }
  std::array<std::size_t, 16> counts{};
  for (std::size_t i = 1; i < row.size(); ++i) {
    ++counts[symbol_index(row[i - 1]) * 4 + symbol_index(row[i])];
  }
  return entropy_of(counts);
}

double catena_entropy(const EntityGrid& grid, std::string_view entity_id, EntropyMode mode) {
  const auto e = grid.find(entity_id);
  if (!e) throw LookupError(fmt::format("entity '{}' is not in the grid", entity_id));
  return row_entropy(grid.row(*e), mode);
}

CoherenceScore doc_coherence_entropy(const EntityGrid& grid, EntropyMode mode, Weighting weighting) {
  CoherenceScore score;
  if (grid.entity_count() == 0) {
    score.degenerate = true;
    return score;
  }
  std::map<std::string, double> weights;
  for (std::size_t e = 0; e < grid.entity_count(); ++e) {
    score.per_entity_entropy.emplace(grid.entities()[e], row_entropy(grid.row(e), mode));
    weights.emplace(grid.entities()[e], weighting == Weighting::kMentions
                                            ? static_cast<double>(grid.mention_count(e))
                                            : 1.0);
  }
  // Sum in entity-id order so the value does not depend on row order.
  double num = 0.0, den = 0.0;
  for (const auto& [id, h] : score.per_entity_entropy) {
    num += weights[id] * h;
    den += weights[id];
  }
  score.value = den > 0.0 ? num / den : 0.0;
  return score;
}

std::vector<std::vector<std::size_t>> sample_permutations(std::size_t n, std::size_t count,
                                                          std::uint64_t seed) {
  // Cap at n! - 1 distinct non-identity permutations.
  std::size_t available = 1;
  bool large = false;
  for (std::size_t i = 2; i <= n; ++i) {
    if (available > std::numeric_limits<std::size_t>::max() / i) {
      large = true;
      break;
    }
    available *= i;
  }
  if (!large) count = std::min(count, available - 1);

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::set<std::vector<std::size_t>> seen{identity};
  std::vector<std::vector<std::size_t>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 gen(seq);
    std::vector<std::size_t> perm;
    do {
      perm = identity;
      for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[bounded(gen, k)]);
    } while (seen.contains(perm));
    seen.insert(perm);
    out.push_back(std::move(perm));
  }
  return out;
}

ReorderResult reorder_eval(std::size_t sentence_count, std::span<const text::EntityMention> mentions,
                           const ReorderOptions& options) {
  if (options.shuffles == 0) throw ParameterError("reorder evaluation needs at least one shuffle");
  if (sentence_count < 3) {
    throw DomainError(fmt::format("reorder evaluation needs at least 3 sentences, got {}", sentence_count));
  }
  ReorderResult result;
  const EntityGrid original = build_grid(sentence_count, mentions);
  result.original_score = doc_coherence_entropy(original, options.mode, options.weighting).value;

  const auto perms = sample_permutations(sentence_count, options.shuffles, options.seed);
  std::size_t wins = 0;
  for (const auto& perm : perms) {
    const auto shuffled = permute_mentions(mentions, perm);
    const EntityGrid grid = build_grid(sentence_count, shuffled);
    const double s = doc_coherence_entropy(grid, options.mode, options.weighting).value;
    result.permuted_scores.push_back(s);
    if (s > result.original_score) ++wins;
  }
  result.accuracy = static_cast<double>(wins) / static_cast<double>(perms.size());
  return result;
}

ReorderResult reorder_eval(const text::Document& doc, const text::AnnotationSet& annotations,
                           const ReorderOptions& options) {
  return reorder_eval(doc.sentence_count(), annotations.entity_mentions, options);
}

}  // namespace catenae::entitygrid
