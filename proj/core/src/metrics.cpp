#include "catenae/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <unordered_map>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::retrieval {

void Qrels::add(const std::string& query_id, const std::string& doc_id, int grade) {
  if (grade < 0) {
    throw ValidationError(fmt::format("negative grade {} for ({}, {})", grade, query_id, doc_id));
  }
  by_query_[query_id][doc_id] = grade;
  max_grade_ = std::max(max_grade_, grade);
}

const Qrels::Judgments& Qrels::for_query(std::string_view query_id) const {
  const auto it = by_query_.find(query_id);
  if (it == by_query_.end()) {
    throw UndefinedMetricError(fmt::format("no judgments for query '{}'", query_id));
  }
  return it->second;
}

bool Qrels::has_query(std::string_view query_id) const { return by_query_.contains(query_id); }

namespace {

void check_k(std::size_t k) {
  if (k == 0) throw ParameterError("metric cutoff k must be positive");
}

int grade_of(const Qrels::Judgments& judged, std::string_view doc) {
  const auto it = judged.find(doc);
  return it == judged.end() ? 0 : it->second;
}

}  // namespace

double precision_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged,
                      std::size_t k) {
  check_k(k);
  std::size_t hits = 0;
  const std::size_t depth = std::min(k, ranking.size());
  for (std::size_t i = 0; i < depth; ++i) hits += grade_of(judged, ranking[i]) > 0;
  return static_cast<double>(hits) / static_cast<double>(k);
}

double reciprocal_rank(std::span<const std::string> ranking, const Qrels::Judgments& judged) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (grade_of(judged, ranking[i]) > 0) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double bpref(std::span<const std::string> ranking, const Qrels::Judgments& judged) {
  std::size_t relevant = 0, nonrelevant = 0;
  for (const auto& [_, g] : judged) (g > 0 ? relevant : nonrelevant)++;
  if (relevant == 0) return 0.0;
  const double bound = static_cast<double>(std::min(relevant, nonrelevant));
  double sum = 0.0;
  std::size_t nonrel_above = 0;
  for (const auto& doc : ranking) {
    const auto it = judged.find(doc);
    if (it == judged.end()) continue;
    if (it->second > 0) {
      sum += bound == 0.0
                 ? 1.0
                 : 1.0 - static_cast<double>(std::min(nonrel_above, relevant)) / bound;
    } else {
      ++nonrel_above;
    }
  }
  return sum / static_cast<double>(relevant);
}

double ndcg_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged,
                 std::size_t k) {
  check_k(k);
  auto gain = [](int g) { return std::exp2(static_cast<double>(g)) - 1.0; };
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) {
    dcg += gain(grade_of(judged, ranking[i])) / std::log2(static_cast<double>(i) + 2.0);
  }
  std::vector<int> grades;
  for (const auto& [_, g] : judged) grades.push_back(g);
  std::sort(grades.begin(), grades.end(), std::greater<>());
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, grades.size()); ++i) {
    ideal += gain(grades[i]) / std::log2(static_cast<double>(i) + 2.0);
  }
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

double err_at_k(std::span<const std::string> ranking, const Qrels::Judgments& judged, std::size_t k,
                int max_grade) {
  check_k(k);
  if (max_grade <= 0) return 0.0;
  const double scale = std::exp2(static_cast<double>(max_grade));
  double err = 0.0;
  double not_stopped = 1.0;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) {
    const double r = (std::exp2(static_cast<double>(grade_of(judged, ranking[i]))) - 1.0) / scale;
    err += not_stopped * r / static_cast<double>(i + 1);
    not_stopped *= 1.0 - r;
  }
  return err;
}

namespace {

// Counts inversions with a bottom-up merge sort.
std::size_t count_inversions(std::vector<std::size_t> v) {
  std::vector<std::size_t> buf(v.size());
  std::size_t inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
          buf[out++] = v[i++];
        } else {
          inversions += mid - i;
          buf[out++] = v[j++];
        }
      }
      while (i < mid) buf[out++] = v[i++];
      while (j < hi) buf[out++] = v[j++];
    }
    v.swap(buf);
  }
  return inversions;
}

}  // namespace

double kendall_tau(std::span<const std::size_t> permutation) {
  const std::size_t n = permutation.size();
  if (n < 2) throw UndefinedMetricError("Kendall tau needs at least two items");
  std::vector<bool> seen(n, false);
  for (std::size_t p : permutation) {
    if (p >= n || seen[p]) throw ValidationError("not a permutation of 0..n-1");
    seen[p] = true;
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double inv = static_cast<double>(
      count_inversions(std::vector<std::size_t>(permutation.begin(), permutation.end())));
  return (pairs - 2.0 * inv) / pairs;
}

double kendall_tau(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw ValidationError("Kendall tau needs orderings of the same items");
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!pos.emplace(b[i], i).second) throw ValidationError("duplicate item in ordering");
  }
  std::vector<std::size_t> perm;
  perm.reserve(a.size());
  for (const auto& item : a) {
    const auto it = pos.find(item);
    if (it == pos.end()) {
      throw ValidationError(fmt::format("item '{}' missing from the second ordering", item));
    }
    perm.push_back(it->second);
  }
  return kendall_tau(std::span<const std::size_t>(perm));
}

MetricSpec parse_metric(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "mrr") return {MetricKind::kReciprocalRank, 0};
  if (lower == "bpref") return {MetricKind::kBpref, 0};
  const auto at = lower.find('@');
  if (at != std::string::npos) {
    const std::string head = lower.substr(0, at);
    const std::string digits = lower.substr(at + 1);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    const bool ok = ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty();
    if (ok && k == 0) throw ParameterError(fmt::format("metric cutoff must be positive in '{}'", name));
    if (ok) {
      if (head == "p" || head == "precision") return {MetricKind::kPrecision, k};
      if (head == "ndcg") return {MetricKind::kNdcg, k};
      if (head == "err") return {MetricKind::kErr, k};
    }
  }
  throw ParameterError(fmt::format("unknown metric '{}' (expected p@K, ndcg@K, err@K, mrr, bpref)", name));
}

std::string to_string(const MetricSpec& spec) {
  switch (spec.kind) {
    case MetricKind::kPrecision: return fmt::format("p@{}", spec.k);
    case MetricKind::kReciprocalRank: return "mrr";
    case MetricKind::kBpref: return "bpref";
    case MetricKind::kNdcg: return fmt::format("ndcg@{}", spec.k);
    case MetricKind::kErr: return fmt::format("err@{}", spec.k);
  }
  return "unknown";
}

double evaluate(const MetricSpec& spec, std::span<const std::string> ranking,
                const Qrels::Judgments& judged, int max_grade) {
  switch (spec.kind) {
    case MetricKind::kPrecision: return precision_at_k(ranking, judged, spec.k);
    case MetricKind::kReciprocalRank: return reciprocal_rank(ranking, judged);
    case MetricKind::kBpref: return bpref(ranking, judged);
    case MetricKind::kNdcg: return ndcg_at_k(ranking, judged, spec.k);
    case MetricKind::kErr: return err_at_k(ranking, judged, spec.k, max_grade);
  }
  return 0.0;
}

EvalReport evaluate_runs(const std::vector<RankedRun>& runs, const Qrels& qrels,
                         const MetricSpec& spec) {
  EvalReport report;
  report.metric = spec;
  double total = 0.0;
  for (const RankedRun& run : runs) {
    if (!qrels.has_query(run.query_id)) {
      report.skipped.push_back(run.query_id);
      continue;
    }
    const auto ids = run.doc_ids();
    const double v = evaluate(spec, ids, qrels.for_query(run.query_id), qrels.max_grade());
    report.rows.push_back({run.query_id, v});
    total += v;
  }
  if (!report.rows.empty()) report.mean = total / static_cast<double>(report.rows.size());
  return report;
}

}  // namespace catenae::retrieval
