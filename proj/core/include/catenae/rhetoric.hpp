#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "catenae/corpus.hpp"
#include "catenae/retrieval.hpp"

namespace catenae::rhetoric {

struct RelationStats {
  // Labels whose total count is zero are absent from both maps.
  std::map<std::string, double> p_retrieval;
  std::map<std::string, std::size_t> total_spans;
  std::map<std::string, std::size_t> retrieved_spans;
  // Run documents with no annotation set; counted as zero spans.
  std::vector<std::string> unannotated_docs;

  /// Mean of p_retrieval over observed labels; 0 when none were observed.
  double mean_probability() const;
};

/// Per-label fraction of spans found in documents ranked at or above
/// `cutoff`, over spans in every document the runs scored. Documents
/// scored by several queries count once per query.
RelationStats relation_stats(std::span<const retrieval::RankedRun> runs,
                             const text::AnnotationIndex& annotations, std::size_t cutoff = 10);

/// Mean retrieval probability of the document's spans, skipping labels the
/// statistics never observed. Returns false when nothing could be averaged.
bool document_relation_probability(const text::AnnotationSet& annotations,
                                   const RelationStats& stats, double& out);

/// (1 - lambda) * minmax(baseline) + lambda * mean span probability.
/// Documents without usable spans get the mean probability over labels.
retrieval::RankedRun rerank_rhetorical(const retrieval::RankedRun& baseline,
                                       const text::AnnotationIndex& annotations,
                                       const RelationStats& stats, double lambda);

}  // namespace catenae::rhetoric
