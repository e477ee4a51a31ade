#include "catenae/comp.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::comp {

std::string join(const Phrase& phrase) {
  std::string out;
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    if (i) out.push_back(' ');
    out += phrase[i];
  }
  return out;
}

AssociationMetric parse_association_metric(std::string_view name) {
  if (name == "pearson") return {AssociationKind::kPearson, 0};
  if (name == "spearman") return {AssociationKind::kSpearman, 0};
  if (name == "kendall") return {AssociationKind::kKendall, 0};
  if (name == "jaccard") return {AssociationKind::kJaccard, 0};
  if (name == "overlap") return {AssociationKind::kOverlap, 0};
  if (name.starts_with("overlap@")) {
    const auto digits = name.substr(8);
    std::size_t depth = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), depth);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && depth > 0) {
      return {AssociationKind::kOverlap, depth};
    }
  }
  throw ParameterError(fmt::format("unknown association metric '{}'", name));
}

std::string to_string(const AssociationMetric& metric) {
  switch (metric.kind) {
    case AssociationKind::kPearson: return "pearson";
    case AssociationKind::kSpearman: return "spearman";
    case AssociationKind::kKendall: return "kendall";
    case AssociationKind::kJaccard: return "jaccard";
    case AssociationKind::kOverlap:
      return metric.depth ? fmt::format("overlap@{}", metric.depth) : std::string("overlap");
  }
  return "unknown";
}

DistProfile build_profile(const Phrase& phrase, const text::Corpus& corpus,
                          const ProfileOptions& options) {
  if (phrase.empty()) throw ParameterError("phrase must contain at least one term");
  if (options.window == 0) throw ParameterError("profile window must be at least 1");

  const std::unordered_set<std::string> own(phrase.begin(), phrase.end());
  DistProfile profile;
  profile.phrase = phrase;
  auto count = [&](const std::string& term) {
    if (own.contains(term)) return;
    if (options.stopwords != nullptr && options.stopwords->contains(term)) return;
    ++profile.counts[term];
    ++profile.support_count;
  };

  const std::size_t len = phrase.size();
  for (const text::Document& doc : corpus) {
    for (const text::SentenceRange& s : doc.sentences) {
      if (s.size() < len) continue;
      for (std::size_t start = s.begin; start + len <= s.end; ++start) {
        bool match = true;
        for (std::size_t j = 0; j < len && match; ++j) {
          match = doc.tokens[start + j].normalized == phrase[j];
        }
        if (!match) continue;
        const std::size_t left = start >= s.begin + options.window ? start - options.window : s.begin;
        for (std::size_t i = left; i < start; ++i) count(doc.tokens[i].normalized);
        const std::size_t right = std::min(s.end, start + len + options.window);
        for (std::size_t i = start + len; i < right; ++i) count(doc.tokens[i].normalized);
      }
    }
  }
  for (const auto& [term, c] : profile.counts) {
    profile.dist.emplace(term, static_cast<double>(c) / static_cast<double>(profile.support_count));
  }
  return profile;
}

std::vector<Phrase> perturb(const Phrase& phrase, const text::SynonymMap& synonyms) {
  std::vector<Phrase> out;
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    const auto it = synonyms.find(phrase[i]);
    if (it == synonyms.end()) continue;
    for (const auto& syn : it->second) {
      Phrase p = phrase;
      p[i] = syn;
      out.push_back(std::move(p));
    }
  }
  return out;
}

double kl_divergence(const DistProfile& p, const DistProfile& q, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ParameterError(fmt::format("smoothing epsilon must be positive, got {}", epsilon));
  }
  if (p.empty() || p.dist.empty()) throw DomainError("KL divergence of an empty profile");
  if (p.dist == q.dist) return 0.0;

  std::set<std::string_view> vocab;
  for (const auto& [t, _] : p.dist) vocab.insert(t);
  for (const auto& [t, _] : q.dist) vocab.insert(t);
  const double norm = 1.0 + epsilon * static_cast<double>(vocab.size());

  double d = 0.0;
  for (const auto& [term, pt] : p.dist) {
    if (pt <= 0.0) continue;
    const auto it = q.dist.find(term);
    const double qt = ((it == q.dist.end() ? 0.0 : it->second) + epsilon) / norm;
    d += pt * std::log2(pt / qt);
  }
  return std::max(d, 0.0);
}

namespace {

double aggregate(const std::vector<std::pair<Phrase, double>>& values, Aggregation how) {
  double acc = how == Aggregation::kMax ? -std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& [_, v] : values) acc = how == Aggregation::kMax ? std::max(acc, v) : acc + v;
  return how == Aggregation::kMax ? acc : acc / static_cast<double>(values.size());
}

[[noreturn]] void no_occurrence(const Phrase& phrase) {
  throw NoOccurrenceError(fmt::format("phrase '{}' does not occur in the corpus", join(phrase)));
}

[[noreturn]] void insufficient(const Phrase& phrase, std::size_t perturbations) {
  throw InsufficientEvidenceError(
      perturbations == 0
          ? fmt::format("phrase '{}' has no synonym perturbations", join(phrase))
          : fmt::format("none of the {} perturbations of '{}' occur in the corpus", perturbations,
                        join(phrase)));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetricError("correlation of a zero-variance vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Kendall tau-b, which reduces to tau-a without ties.
double kendall_b(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0.0, discordant = 0.0, ties_x = 0.0, ties_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ties_x += 1.0;
      } else if (dy == 0.0) {
        ties_y += 1.0;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        concordant += 1.0;
      } else {
        discordant += 1.0;
      }
    }
  }
  const double denom = std::sqrt((concordant + discordant + ties_x) * (concordant + discordant + ties_y));
  if (denom == 0.0) throw UndefinedMetricError("Kendall tau of a zero-variance vector");
  return std::clamp((concordant - discordant) / denom, -1.0, 1.0);
}

}  // namespace

CompScore compositionality_kl(const Phrase& phrase, const text::Corpus& corpus,
                              const text::SynonymMap& synonyms, const KlOptions& options) {
  if (!(options.epsilon > 0.0)) {
    throw ParameterError(fmt::format("smoothing epsilon must be positive, got {}", options.epsilon));
  }
  const DistProfile original = build_profile(phrase, corpus, options.profile);
  if (original.empty()) no_occurrence(phrase);

  const auto perturbations = perturb(phrase, synonyms);
  CompScore result;
  result.phrase = phrase;
  for (const Phrase& p : perturbations) {
    const DistProfile other = build_profile(p, corpus, options.profile);
    if (other.empty()) continue;
    result.per_perturbation.emplace_back(p, kl_divergence(original, other, options.epsilon));
  }
  if (result.per_perturbation.empty()) insufficient(phrase, perturbations.size());
  result.score = aggregate(result.per_perturbation, options.aggregation);
  return result;
}

std::map<std::string, std::size_t> document_frequencies(const text::Corpus& corpus) {
  std::map<std::string, std::size_t> df;
  for (const text::Document& doc : corpus) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : doc.tokens) {
      if (seen.insert(t.normalized).second) ++df[t.normalized];
    }
  }
  return df;
}

RankedList to_ranked_list(const DistProfile& profile, std::size_t k, Weighting weighting,
                          const std::map<std::string, std::size_t>* df, std::size_t doc_count) {
  if (k == 0) throw ParameterError("ranked list length k must be at least 1");
  if (weighting == Weighting::kTfIdf && df == nullptr) {
    throw ParameterError("tf-idf weighting needs document frequencies");
  }
  RankedList list;
  list.phrase = profile.phrase;
  for (const auto& [term, c] : profile.counts) {
    double w = static_cast<double>(c);
    if (weighting == Weighting::kTfIdf) {
      const auto it = df->find(term);
      const double f = it == df->end() ? 1.0 : static_cast<double>(std::max<std::size_t>(it->second, 1));
      w *= std::log(1.0 + static_cast<double>(doc_count) / f);
    }
    list.entries.push_back({term, w});
  }
  std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
  });
  if (list.entries.size() > k) list.entries.resize(k);
  return list;
}

RankedList ranked_profile(const Phrase& phrase, const text::Corpus& corpus, std::size_t k,
                          Weighting weighting, const ProfileOptions& options) {
  if (k == 0) throw ParameterError("ranked list length k must be at least 1");
  const DistProfile profile = build_profile(phrase, corpus, options);
  if (weighting == Weighting::kTfIdf) {
    const auto df = document_frequencies(corpus);
    return to_ranked_list(profile, k, weighting, &df, corpus.size());
  }
  return to_ranked_list(profile, k, weighting);
}

double list_association(const RankedList& a, const RankedList& b, const AssociationMetric& metric) {
  if (a.entries.empty() && b.entries.empty()) {
    throw UndefinedMetricError("association of two empty ranked lists");
  }

  if (metric.kind == AssociationKind::kJaccard || metric.kind == AssociationKind::kOverlap) {
    std::size_t depth_a = a.entries.size(), depth_b = b.entries.size();
    if (metric.kind == AssociationKind::kOverlap && metric.depth > 0) {
      depth_a = std::min(depth_a, metric.depth);
      depth_b = std::min(depth_b, metric.depth);
    }
    std::set<std::string_view> sa, sb;
    for (std::size_t i = 0; i < depth_a; ++i) sa.insert(a.entries[i].term);
    for (std::size_t i = 0; i < depth_b; ++i) sb.insert(b.entries[i].term);
    std::size_t shared = 0;
    for (const auto& t : sa) shared += sb.contains(t);
    if (metric.kind == AssociationKind::kJaccard) {
      return static_cast<double>(shared) / static_cast<double>(sa.size() + sb.size() - shared);
    }
    const std::size_t depth =
        metric.depth > 0 ? metric.depth : std::max(a.entries.size(), b.entries.size());
    return static_cast<double>(shared) / static_cast<double>(depth);
  }

  // Align on the union; absent terms get weight 0 and rank |union| + 1.
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> slots;  // 1-based; 0 = absent
  for (std::size_t i = 0; i < a.entries.size(); ++i) slots[a.entries[i].term].first = i + 1;
  for (std::size_t i = 0; i < b.entries.size(); ++i) slots[b.entries[i].term].second = i + 1;
  const double sentinel = static_cast<double>(slots.size() + 1);

  std::vector<double> x, y;
  x.reserve(slots.size());
  y.reserve(slots.size());
  for (const auto& [term, idx] : slots) {
    if (metric.kind == AssociationKind::kPearson) {
      x.push_back(idx.first ? a.entries[idx.first - 1].weight : 0.0);
      y.push_back(idx.second ? b.entries[idx.second - 1].weight : 0.0);
    } else {
      x.push_back(idx.first ? static_cast<double>(idx.first) : sentinel);
      y.push_back(idx.second ? static_cast<double>(idx.second) : sentinel);
    }
  }
  if (metric.kind == AssociationKind::kKendall) return kendall_b(x, y);
  return pearson(x, y);
}

CompScore compositionality_rank(const Phrase& phrase, const text::Corpus& corpus,
                                const text::SynonymMap& synonyms, const RankCompOptions& options) {
  if (options.k == 0) throw ParameterError("ranked list length k must be at least 1");
  std::map<std::string, std::size_t> df;
  if (options.weighting == Weighting::kTfIdf) df = document_frequencies(corpus);
  auto list_for = [&](const Phrase& p) {
    const DistProfile profile = build_profile(p, corpus, options.profile);
    return to_ranked_list(profile, options.k, options.weighting, &df, corpus.size());
  };

  const RankedList original = list_for(phrase);
  if (original.entries.empty()) no_occurrence(phrase);

  const auto perturbations = perturb(phrase, synonyms);
  CompScore result;
  result.phrase = phrase;
  for (const Phrase& p : perturbations) {
    const RankedList other = list_for(p);
    if (other.entries.empty()) continue;
    if (other.entries == original.entries) {
      result.per_perturbation.emplace_back(p, 0.0);
      continue;
    }
    try {
      result.per_perturbation.emplace_back(p, 1.0 - list_association(original, other, options.metric));
    } catch (const UndefinedMetricError&) {
      // e.g. a single shared context term under a correlation metric
    }
  }
  if (result.per_perturbation.empty()) insufficient(phrase, perturbations.size());
  result.score = aggregate(result.per_perturbation, options.aggregation);
  return result;
}

}  // namespace catenae::comp
