#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catenae/retrieval.hpp"

namespace catenae::slogic {

/// Binomial opinion (b, d, u, a) with b + d + u = 1.
struct Opinion {
  double b = 0.0;
  double d = 0.0;
  double u = 1.0;
  double a = 0.5;

  static Opinion vacuous(double base_rate = 0.5) { return {0.0, 0.0, 1.0, base_rate}; }
  bool dogmatic() const { return u == 0.0; }
  bool operator==(const Opinion&) const = default;
};

/// Throws ValidationError unless every component lies in [0, 1] and
/// b + d + u is within `tolerance` of 1.
void validate(const Opinion& w, double tolerance = 1e-9);

/// b = r/(r+s+2), d = s/(r+s+2), u = 2/(r+s+2). Negative or non-finite
/// evidence, or a base rate outside [0, 1], throws ParameterError.
Opinion opinion_from_evidence(double r, double s, double base_rate = 0.5);

/// E = b + a*u.
double expectation(const Opinion& w);

struct ConsensusOptions {
  // Fuse two dogmatic opinions by averaging instead of throwing.
  bool dogmatic_limit = false;
};

/// Cumulative fusion of two independent opinions. Two dogmatic inputs
/// throw DogmaticConflictError unless the limit option is set.
Opinion consensus(const Opinion& w1, const Opinion& w2, const ConsensusOptions& options = {});

/// Trust discounting: b = bt*b, d = bt*d, u = dt + ut + bt*u. The base
/// rate stays the target's.
Opinion discount(const Opinion& trust, const Opinion& w);

struct FusionNode {
  enum class Kind { kLeaf, kConsensus, kDiscount };

  Kind kind = Kind::kLeaf;
  std::string source_id;  // leaves only; may be empty
  Opinion opinion;        // leaves only
  // Consensus: two or more children. Discount: exactly {trust, target}.
  std::vector<FusionNode> children;

  static FusionNode leaf(Opinion w, std::string source_id = {});
  static FusionNode consensus(std::vector<FusionNode> children);
  static FusionNode discount(FusionNode trust, FusionNode target);
};

/// Bottom-up evaluation. Malformed trees throw ValidationError; dogmatic
/// conflicts propagate from consensus.
Opinion fuse(const FusionNode& tree, const ConsensusOptions& options = {});

/// Ranks documents by the expectation of their fused opinion, descending,
/// doc id ascending on ties.
retrieval::RankedRun polyrep_rank(const std::string& query_id,
                                  const std::map<std::string, FusionNode>& trees,
                                  const ConsensusOptions& options = {});

enum class EvidenceModel {
  // r = df, s = 0: each document containing a term is positive evidence.
  kOccurrence,
  // r = df, s = doc_count - df.
  kContrast,
};

struct DifficultyOptions {
  double base_rate = 0.5;
  // Evidence is divided by gamma; defaults to doc_count / 100.
  std::optional<double> gamma;
  EvidenceModel model = EvidenceModel::kOccurrence;
};

struct DifficultyResult {
  Opinion fused;
  std::map<std::string, Opinion> per_term;

  double difficulty() const { return fused.u; }
};

/// Per-term evidence opinions fused by consensus. Repeated terms count
/// once. Throws DomainError for an empty query or an empty index.
DifficultyResult query_opinion(const std::vector<std::string>& query_terms,
                               const retrieval::InvertedIndex& index,
                               const DifficultyOptions& options = {});

/// Uncertainty of the fused query opinion; higher means harder.
double query_difficulty(const std::vector<std::string>& query_terms,
                        const retrieval::InvertedIndex& index,
                        const DifficultyOptions& options = {});

}  // namespace catenae::slogic
