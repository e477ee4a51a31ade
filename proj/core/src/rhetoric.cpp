#include "catenae/rhetoric.hpp"

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::rhetoric {

double RelationStats::mean_probability() const {
  if (p_retrieval.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [_, p] : p_retrieval) total += p;
  return total / static_cast<double>(p_retrieval.size());
}

RelationStats relation_stats(std::span<const retrieval::RankedRun> runs,
                             const text::AnnotationIndex& annotations, std::size_t cutoff) {
  if (cutoff == 0) throw ParameterError("relation statistics cutoff must be at least 1");
  RelationStats stats;
  std::map<std::string, bool> reported;
  for (const auto& run : runs) {
    for (std::size_t rank = 0; rank < run.entries.size(); ++rank) {
      const std::string& doc = run.entries[rank].doc_id;
      const auto it = annotations.find(doc);
      if (it == annotations.end()) {
        if (!reported[doc]) {
          reported[doc] = true;
          stats.unannotated_docs.push_back(doc);
        }
        continue;
      }
      const bool retrieved = rank < cutoff;
      for (const auto& span : it->second.relation_spans) {
        ++stats.total_spans[span.label];
        if (retrieved) ++stats.retrieved_spans[span.label];
      }
    }
  }
  for (const auto& [label, total] : stats.total_spans) {
    const auto r = stats.retrieved_spans.find(label);
    const double hits = r == stats.retrieved_spans.end() ? 0.0 : static_cast<double>(r->second);
    stats.p_retrieval.emplace(label, hits / static_cast<double>(total));
  }
  return stats;
}

bool document_relation_probability(const text::AnnotationSet& annotations,
                                   const RelationStats& stats, double& out) {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& span : annotations.relation_spans) {
    const auto it = stats.p_retrieval.find(span.label);
    if (it == stats.p_retrieval.end()) continue;
    total += it->second;
    ++n;
  }
  if (n == 0) return false;
  out = total / static_cast<double>(n);
  return true;
}

retrieval::RankedRun rerank_rhetorical(const retrieval::RankedRun& baseline,
                                       const text::AnnotationIndex& annotations,
                                       const RelationStats& stats, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParameterError(fmt::format("lambda must lie in [0, 1], got {}", lambda));
  }
  std::map<std::string, double> prior;
  for (const auto& e : baseline.entries) {
    const auto it = annotations.find(e.doc_id);
    double p = 0.0;
    if (it != annotations.end() && document_relation_probability(it->second, stats, p)) {
      prior.emplace(e.doc_id, p);
    }
  }
  auto out = retrieval::interpolate_prior(baseline, prior, lambda, stats.mean_probability());
  out.tag = baseline.tag + "+rst";
  return out;
}

}  // namespace catenae::rhetoric
