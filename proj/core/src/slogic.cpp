#include "catenae/slogic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::slogic {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

bool unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const Opinion& w, double tolerance) {
  if (!unit(w.b) || !unit(w.d) || !unit(w.u) || !unit(w.a)) {
    throw ValidationError(
        fmt::format("opinion ({}, {}, {}, {}) has a component outside [0, 1]", w.b, w.d, w.u, w.a));
  }
  const double sum = w.b + w.d + w.u;
  if (std::abs(sum - 1.0) > tolerance) {
    throw ValidationError(fmt::format("opinion ({}, {}, {}) sums to {}, not 1", w.b, w.d, w.u, sum));
  }
}

Opinion opinion_from_evidence(double r, double s, double base_rate) {
  if (!(r >= 0.0) || !(s >= 0.0) || !std::isfinite(r) || !std::isfinite(s)) {
    throw ParameterError(fmt::format("evidence must be non-negative, got r={} s={}", r, s));
  }
  if (!unit(base_rate)) throw ParameterError(fmt::format("base rate {} outside [0, 1]", base_rate));
  const double total = r + s + 2.0;
  return {r / total, s / total, 2.0 / total, base_rate};
}

double expectation(const Opinion& w) { return w.b + w.a * w.u; }

Opinion consensus(const Opinion& w1, const Opinion& w2, const ConsensusOptions& options) {
  if (w1.dogmatic() && w2.dogmatic()) {
    if (!options.dogmatic_limit) {
      throw DogmaticConflictError("consensus of two dogmatic opinions is undefined");
    }
    // Limit with equal relative dogmatism.
    return {(w1.b + w2.b) / 2.0, (w1.d + w2.d) / 2.0, 0.0, (w1.a + w2.a) / 2.0};
  }
  const double uu = w1.u * w2.u;
  const double kappa = w1.u + w2.u - uu;
  Opinion out;
  out.b = (w1.b * w2.u + w2.b * w1.u) / kappa;
  out.d = (w1.d * w2.u + w2.d * w1.u) / kappa;
  out.u = uu / kappa;
  const double den = kappa - uu;
  if (w1.a == w2.a) {
    out.a = w1.a;  // the weighted mean of equal rates, without rounding drift
  } else if (den > 0.0) {
    out.a = clamp01((w1.a * w2.u + w2.a * w1.u - (w1.a + w2.a) * uu) / den);
  } else {
    out.a = (w1.a + w2.a) / 2.0;
  }
  return out;
}

Opinion discount(const Opinion& trust, const Opinion& w) {
  return {trust.b * w.b, trust.b * w.d, trust.d + trust.u + trust.b * w.u, w.a};
}

FusionNode FusionNode::leaf(Opinion w, std::string source_id) {
  FusionNode n;
  n.kind = Kind::kLeaf;
  n.opinion = w;
  n.source_id = std::move(source_id);
  return n;
}

FusionNode FusionNode::consensus(std::vector<FusionNode> children) {
  FusionNode n;
  n.kind = Kind::kConsensus;
  n.children = std::move(children);
  return n;
}

FusionNode FusionNode::discount(FusionNode trust, FusionNode target) {
  FusionNode n;
  n.kind = Kind::kDiscount;
  n.children.push_back(std::move(trust));
  n.children.push_back(std::move(target));
  return n;
}

Opinion fuse(const FusionNode& tree, const ConsensusOptions& options) {
  switch (tree.kind) {
    case FusionNode::Kind::kLeaf:
      validate(tree.opinion);
      return tree.opinion;
    case FusionNode::Kind::kConsensus: {
      if (tree.children.size() < 2) {
        throw ValidationError(
            fmt::format("consensus node needs at least 2 children, got {}", tree.children.size()));
      }
      Opinion acc = fuse(tree.children.front(), options);
      for (std::size_t i = 1; i < tree.children.size(); ++i) {
        acc = consensus(acc, fuse(tree.children[i], options), options);
      }
      return acc;
    }
    case FusionNode::Kind::kDiscount:
      if (tree.children.size() != 2) {
        throw ValidationError(
            fmt::format("discount node needs exactly 2 children, got {}", tree.children.size()));
      }
      return discount(fuse(tree.children[0], options), fuse(tree.children[1], options));
  }
  throw ValidationError("unknown fusion node kind");
}

retrieval::RankedRun polyrep_rank(const std::string& query_id,
                                  const std::map<std::string, FusionNode>& trees,
                                  const ConsensusOptions& options) {
  retrieval::RankedRun run;
  run.query_id = query_id;
  run.tag = "polyrep";
  for (const auto& [doc, tree] : trees) run.entries.push_back({doc, expectation(fuse(tree, options))});
  retrieval::sort_run(run);
  return run;
}

DifficultyResult query_opinion(const std::vector<std::string>& query_terms,
                               const retrieval::InvertedIndex& index,
                               const DifficultyOptions& options) {
  const std::set<std::string> terms(query_terms.begin(), query_terms.end());
  if (terms.empty()) throw DomainError("query difficulty of an empty query");
  const std::size_t n = index.doc_count();
  double gamma = 0.0;
  if (options.gamma) {
    gamma = *options.gamma;
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw ParameterError(fmt::format("evidence scale gamma must be positive, got {}", gamma));
    }
  } else {
    if (n == 0) throw DomainError("query difficulty on an empty index");
    gamma = static_cast<double>(n) / 100.0;
  }

  DifficultyResult result;
  std::optional<Opinion> acc;
  for (const auto& t : terms) {
    const auto df = static_cast<double>(index.df(t));
    const double neg = options.model == EvidenceModel::kContrast ? static_cast<double>(n) - df : 0.0;
    const Opinion w = opinion_from_evidence(df / gamma, neg / gamma, options.base_rate);
    result.per_term.emplace(t, w);
    acc = acc ? consensus(*acc, w) : w;
  }
  result.fused = *acc;
  return result;
}

double query_difficulty(const std::vector<std::string>& query_terms,
                        const retrieval::InvertedIndex& index, const DifficultyOptions& options) {
  return query_opinion(query_terms, index, options).difficulty();
}

}  // namespace catenae::slogic
