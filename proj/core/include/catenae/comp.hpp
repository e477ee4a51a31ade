#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catenae/annotations.hpp"
#include "catenae/corpus.hpp"

namespace catenae::comp {

using Phrase = std::vector<std::string>;

std::string join(const Phrase& phrase);

/// Distribution of context terms around every occurrence of a phrase.
struct DistProfile {
  Phrase phrase;
  std::map<std::string, double> dist;
  std::map<std::string, std::size_t> counts;
  std::size_t support_count = 0;

  bool empty() const { return support_count == 0; }
};

struct RankedEntry {
  std::string term;
  double weight = 0.0;

  bool operator==(const RankedEntry&) const = default;
};

/// Sorted by weight descending, ties by term ascending; no duplicate terms.
struct RankedList {
  Phrase phrase;
  std::vector<RankedEntry> entries;
};

struct CompScore {
  Phrase phrase;
  double score = 0.0;
  std::vector<std::pair<Phrase, double>> per_perturbation;
};

enum class Weighting { kTf, kTfIdf };
enum class Aggregation { kMean, kMax };
enum class AssociationKind { kPearson, kSpearman, kKendall, kJaccard, kOverlap };

struct AssociationMetric {
  AssociationKind kind = AssociationKind::kSpearman;
  std::size_t depth = 0;  // overlap@depth; 0 = longer list length
};

/// Accepts pearson, spearman, kendall, jaccard, overlap, overlap@<k>.
AssociationMetric parse_association_metric(std::string_view name);
std::string to_string(const AssociationMetric& metric);

struct ProfileOptions {
  std::size_t window = 5;
  // Context terms to ignore; nullptr keeps every term.
  const text::WordSet* stopwords = &text::default_stopwords();
};

/// Counts context terms within `window` tokens on either side of each
/// contiguous in-sentence occurrence of `phrase`. Terms of the phrase itself
/// and stopwords are never counted. An absent phrase yields an empty profile.
DistProfile build_profile(const Phrase& phrase, const text::Corpus& corpus,
                          const ProfileOptions& options = {});

/// One-word-at-a-time synonym substitutions, by position then synonym order.
std::vector<Phrase> perturb(const Phrase& phrase, const text::SynonymMap& synonyms);

/// D(p || q) in bits. q is smoothed by adding epsilon to every term of the
/// union vocabulary and renormalizing. Exactly 0 when p and q coincide.
double kl_divergence(const DistProfile& p, const DistProfile& q, double epsilon = 1e-6);

struct KlOptions {
  ProfileOptions profile;
  double epsilon = 1e-6;
  Aggregation aggregation = Aggregation::kMean;
};

/// Divergence between the phrase profile and each supported perturbation.
/// Throws NoOccurrenceError or InsufficientEvidenceError.
CompScore compositionality_kl(const Phrase& phrase, const text::Corpus& corpus,
                              const text::SynonymMap& synonyms, const KlOptions& options = {});

/// Document frequencies of every normalized term in the corpus.
std::map<std::string, std::size_t> document_frequencies(const text::Corpus& corpus);

RankedList to_ranked_list(const DistProfile& profile, std::size_t k, Weighting weighting,
                          const std::map<std::string, std::size_t>* df = nullptr,
                          std::size_t doc_count = 0);

RankedList ranked_profile(const Phrase& phrase, const text::Corpus& corpus, std::size_t k,
                          Weighting weighting = Weighting::kTf,
                          const ProfileOptions& options = {});

/// Correlation (pearson, spearman, kendall) over the union of both term sets,
/// or set overlap (jaccard, overlap@k) over the raw sets.
double list_association(const RankedList& a, const RankedList& b, const AssociationMetric& metric);

struct RankCompOptions {
  ProfileOptions profile;
  std::size_t k = 50;
  Weighting weighting = Weighting::kTf;
  AssociationMetric metric;
  Aggregation aggregation = Aggregation::kMean;
};

/// 1 - association between the phrase's ranked list and each perturbation's.
CompScore compositionality_rank(const Phrase& phrase, const text::Corpus& corpus,
                                const text::SynonymMap& synonyms,
                                const RankCompOptions& options = {});

}  // namespace catenae::comp
