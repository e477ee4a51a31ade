#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catenae/annotations.hpp"
#include "catenae/text.hpp"

namespace catenae::entitygrid {

using text::Role;

/// Entity x sentence matrix of syntactic roles. Rows follow first-mention
/// order; a sentence with several mentions of one entity keeps the highest
/// priority role (s > o > x).
class EntityGrid {
 public:
  EntityGrid() = default;
  EntityGrid(std::vector<std::string> entities, std::size_t sentence_count);

  const std::vector<std::string>& entities() const { return entities_; }
  std::size_t entity_count() const { return entities_.size(); }
  std::size_t sentence_count() const { return sentences_; }

  Role cell(std::size_t entity, std::size_t sentence) const {
    return cells_[entity * sentences_ + sentence];
  }
  std::span<const Role> row(std::size_t entity) const {
    return {cells_.data() + entity * sentences_, sentences_};
  }
  std::optional<std::size_t> find(std::string_view entity_id) const;
  /// Number of non-absent cells in the row.
  std::size_t mention_count(std::size_t entity) const;

  /// Merges a mention into a cell by role priority.
  void place(std::size_t entity, std::size_t sentence, Role role);

  bool operator==(const EntityGrid&) const = default;

 private:
  std::vector<std::string> entities_;
  std::size_t sentences_ = 0;
  std::vector<Role> cells_;
};

/// Throws ValidationError when a mention's sentence index is out of range.
EntityGrid build_grid(std::size_t sentence_count, std::span<const text::EntityMention> mentions);
EntityGrid build_grid(const text::Document& doc, const text::AnnotationSet& annotations);

/// Re-indexes mentions so that original sentence `order[j]` becomes sentence
/// j. `order` must be a permutation of 0..sentence_count-1.
std::vector<text::EntityMention> permute_mentions(std::span<const text::EntityMention> mentions,
                                                  std::span<const std::size_t> order);

/// Column view of a sentence reordering: same rows, cells taken from
/// `order[j]` for new column j. Row order is left unchanged.
EntityGrid permute_columns(const EntityGrid& grid, std::span<const std::size_t> order);

enum class EntropyMode {
  kSymbol,      // distribution over {s, o, x, -}; 0..2 bits
  kTransition,  // distribution over adjacent symbol pairs; 0..4 bits
};

enum class Weighting { kMentions, kUniform };

/// Shannon entropy (base 2) of one catena. Throws LookupError for an
/// unknown entity.
double catena_entropy(const EntityGrid& grid, std::string_view entity_id,
                      EntropyMode mode = EntropyMode::kSymbol);
double row_entropy(std::span<const Role> row, EntropyMode mode);

struct CoherenceScore {
  double value = 0.0;  // lower is more coherent
  std::map<std::string, double> per_entity_entropy;
  bool degenerate = false;  // grid had no entities
};

CoherenceScore doc_coherence_entropy(const EntityGrid& grid,
                                     EntropyMode mode = EntropyMode::kSymbol,
                                     Weighting weighting = Weighting::kMentions);

struct ReorderOptions {
  std::size_t shuffles = 20;
  std::uint64_t seed = 42;
  EntropyMode mode = EntropyMode::kTransition;
  Weighting weighting = Weighting::kMentions;
};

/// Distinct non-identity permutations of 0..n-1; permutation i comes from a
/// generator seeded with (seed, i). At most n! - 1 are returned.
std::vector<std::vector<std::size_t>> sample_permutations(std::size_t n, std::size_t count,
                                                          std::uint64_t seed);

struct ReorderResult {
  double accuracy = 0.0;
  double original_score = 0.0;
  std::vector<double> permuted_scores;
};

/// Fraction of sampled sentence permutations whose grid scores strictly
/// higher (less coherent) than the original; ties count as failures.
/// Throws DomainError below 3 sentences and ParameterError for 0 shuffles.
ReorderResult reorder_eval(std::size_t sentence_count, std::span<const text::EntityMention> mentions,
                           const ReorderOptions& options = {});
ReorderResult reorder_eval(const text::Document& doc, const text::AnnotationSet& annotations,
                           const ReorderOptions& options = {});

}  // namespace catenae::entitygrid
