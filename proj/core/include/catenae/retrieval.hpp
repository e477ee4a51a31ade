#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "catenae/corpus.hpp"
#include "catenae/graphrank.hpp"

namespace catenae::retrieval {

struct Posting {
  std::size_t doc = 0;  // index into InvertedIndex::doc_ids()
  std::size_t tf = 0;

  bool operator==(const Posting&) const = default;
};

/// Postings exclude stopwords; document lengths count every token, so
/// length normalization does not depend on the stoplist.
class InvertedIndex {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

  /// Throws BuildError on duplicate doc ids.
  static InvertedIndex build(const text::Corpus& corpus,
                             const text::WordSet* stopwords = &text::default_stopwords());

  /// Reads the directory layout written by save().
  static InvertedIndex load(const std::string& dir);
  void save(const std::string& dir) const;

  std::size_t doc_count() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<std::size_t> doc_index(std::string_view doc_id) const;
  std::size_t doc_length(std::size_t doc) const { return doc_lengths_[doc]; }
  double average_length() const;

  std::span<const Posting> postings(std::string_view term) const;
  std::size_t df(std::string_view term) const { return postings(term).size(); }
  const PostingMap& all_postings() const { return postings_; }
  std::unordered_map<std::string, std::size_t> df_table() const;

 private:
  std::vector<std::string> doc_ids_;  // sorted
  std::vector<std::size_t> doc_lengths_;
  PostingMap postings_;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

/// One query's ranking. Order of `entries` is authoritative: baseline runs
/// sort by score descending with doc id ascending on ties.
struct RankedRun {
  std::string query_id;
  std::vector<ScoredDoc> entries;
  std::string tag = "catenae";

  std::vector<std::string> doc_ids() const;
};

/// Sorts by score descending, doc id ascending on ties.
void sort_run(RankedRun& run);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// BM25 idf: ln(1 + (N - df + 0.5)/(df + 0.5)).
double bm25_idf(std::size_t doc_count, std::size_t df);

/// Standard BM25 over documents containing at least one query term.
/// Repeated query terms contribute once per occurrence.
RankedRun score_baseline(const std::string& query_id, const std::vector<std::string>& query_terms,
                         const InvertedIndex& index, const Bm25Params& params = {});

/// Ranker plug-in surface: any model that can order the documents matching
/// a query.
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual RankedRun rank(const std::string& query_id,
                         const std::vector<std::string>& query_terms) const = 0;
};

class Bm25Ranker final : public Ranker {
 public:
  Bm25Ranker(const InvertedIndex& index, Bm25Params params = {}) : index_(index), params_(params) {}
  RankedRun rank(const std::string& query_id,
                 const std::vector<std::string>& query_terms) const override;

 private:
  const InvertedIndex& index_;
  Bm25Params params_;
};

using TermWeightTable = std::map<std::string, graphrank::TermWeights>;

/// Ranks with graph-of-words weights (tw_score) over the documents that
/// contain a query term; no length normalization.
class GraphWeightRanker final : public Ranker {
 public:
  GraphWeightRanker(const InvertedIndex& index, const TermWeightTable& weights, double k = 1.0);
  RankedRun rank(const std::string& query_id,
                 const std::vector<std::string>& query_terms) const override;

 private:
  const InvertedIndex& index_;
  const TermWeightTable& weights_;
  std::unordered_map<std::string, std::size_t> df_;
  double k_;
};

/// Computes graph-of-words weights for every document of a corpus.
TermWeightTable compute_term_weights(const text::Corpus& corpus, std::size_t window,
                                     const graphrank::RankOptions& options = {});

void save_term_weights(const TermWeightTable& table, const std::string& path);
TermWeightTable load_term_weights(const std::string& path);

/// score'(d) = (1 - lambda) * minmax(score(d)) + lambda * prior(d), stable
/// sorted by the new score with ties kept in the original order. Documents
/// absent from `prior` use `fallback`. Throws ParameterError unless
/// lambda is in [0, 1].
RankedRun interpolate_prior(const RankedRun& run, const std::map<std::string, double>& prior,
                            double lambda, double fallback);

}  // namespace catenae::retrieval
