#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catenae/retrieval.hpp"

namespace catenae::retrieval {

/// Graded judgments; grade > 0 means relevant.
class Qrels {
 public:
  using Judgments = std::map<std::string, int, std::less<>>;

  void add(const std::string& query_id, const std::string& doc_id, int grade);

  /// Throws UndefinedMetricError when the query has no judgments.
  const Judgments& for_query(std::string_view query_id) const;
  bool has_query(std::string_view query_id) const;
  const std::map<std::string, Judgments, std::less<>>& queries() const { return by_query_; }
  /// Largest grade over all judgments (the scale maximum used by ERR).
  int max_grade() const { return max_grade_; }

 private:
  std::map<std::string, Judgments, std::less<>> by_query_;
  int max_grade_ = 0;
};

// Single-query metrics over a ranking of doc ids (best first). All throw
// ParameterError for k == 0.
double precision_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged,
                      std::size_t k);
double reciprocal_rank(std::span<const std::string> ranking, const Qrels::Judgments& judged);
/// Binary preference over judged documents only; unjudged documents are
/// ignored. 0 when the query has no relevant judgments.
double bpref(std::span<const std::string> ranking, const Qrels::Judgments& judged);
/// Gain 2^g - 1, discount log2(rank + 1); 0 when the ideal DCG is 0.
double ndcg_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged,
                 std::size_t k);
/// Cascade model with stopping probability (2^g - 1) / 2^max_grade.
double err_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged, std::size_t k,
                int max_grade);

/// Kendall tau between two orderings of the same item set. Throws
/// ValidationError when the sets differ and UndefinedMetricError for fewer
/// than two items.
double kendall_tau(std::span<const std::string> a, std::span<const std::string> b);
/// Tau of `permutation` (a reordering of 0..n-1) against the identity.
double kendall_tau(std::span<const std::size_t> permutation);

enum class MetricKind { kPrecision, kReciprocalRank, kBpref, kNdcg, kErr };

struct MetricSpec {
  MetricKind kind = MetricKind::kNdcg;
  std::size_t k = 10;  // ignored by mrr and bpref
};

/// Parses p@K, ndcg@K, err@K, mrr, bpref (case-insensitive).
MetricSpec parse_metric(std::string_view name);
std::string to_string(const MetricSpec& spec);

double evaluate(const MetricSpec& spec, std::span<const std::string> ranking,
                const Qrels::Judgments& judged, int max_grade);

struct EvalRow {
  std::string query_id;
  double value = 0.0;
};

struct EvalReport {
  MetricSpec metric;
  std::vector<EvalRow> rows;    // queries with judgments, in run order
  double mean = 0.0;            // over rows; 0 when empty
  std::vector<std::string> skipped;  // queries without judgments
};

EvalReport evaluate_runs(const std::vector<RankedRun>& runs, const Qrels& qrels,
                         const MetricSpec& spec);

}  // namespace catenae::retrieval
