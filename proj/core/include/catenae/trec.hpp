#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "catenae/metrics.hpp"
#include "catenae/retrieval.hpp"

namespace catenae::retrieval {

/// TREC run lines `qid Q0 docid rank score tag`. Queries keep their first
/// appearance order; entries within a query are ordered by the rank column.
std::vector<RankedRun> parse_run(std::istream& in, const std::string& source = "<run>");
std::vector<RankedRun> load_run(const std::string& path);

/// Ranks are written 1-based in entry order.
void write_run(std::ostream& out, const RankedRun& run);
void write_runs(std::ostream& out, const std::vector<RankedRun>& runs);

/// Qrels lines `qid 0 docid grade`.
Qrels parse_qrels(std::istream& in, const std::string& source = "<qrels>");
Qrels load_qrels(const std::string& path);

/// Query file lines `qid<TAB>query text`.
struct QueryRecord {
  std::string query_id;
  std::string text;
};
std::vector<QueryRecord> parse_queries(std::istream& in, const std::string& source = "<queries>");
std::vector<QueryRecord> load_queries(const std::string& path);

}  // namespace catenae::retrieval
