#include "catenae/retrieval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::retrieval {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& field, const std::string& source, std::size_t line) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(source, line, fmt::format("'{}' is not a valid number", field));
  }
  return value;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

}  // namespace

InvertedIndex InvertedIndex::build(const text::Corpus& corpus, const text::WordSet* stopwords) {
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return corpus[a].doc_id < corpus[b].doc_id; });

  InvertedIndex index;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const text::Document& doc = corpus[order[rank]];
    if (rank > 0 && doc.doc_id == index.doc_ids_.back()) {
      throw BuildError(fmt::format("duplicate doc id '{}'", doc.doc_id));
    }
    index.doc_ids_.push_back(doc.doc_id);
    index.doc_lengths_.push_back(doc.tokens.size());
    std::map<std::string_view, std::size_t> tf;
    for (const auto& t : doc.tokens) {
      if (stopwords != nullptr && stopwords->contains(t.normalized)) continue;
      ++tf[t.normalized];
    }
    for (const auto& [term, count] : tf) {
      auto it = index.postings_.find(term);
      if (it == index.postings_.end()) it = index.postings_.emplace(std::string(term), std::vector<Posting>{}).first;
      it->second.push_back({rank, count});
    }
  }
  return index;
}

void InvertedIndex::save(const std::string& dir) const {
  fs::create_directories(dir);
  auto docs = open_output(fs::path(dir) / "docs.tsv");
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    docs << doc_ids_[i] << '\t' << doc_lengths_[i] << '\n';
  }
  auto post = open_output(fs::path(dir) / "postings.tsv");
  for (const auto& [term, list] : postings_) {
    for (const Posting& p : list) post << term << '\t' << doc_ids_[p.doc] << '\t' << p.tf << '\n';
  }
  if (!docs || !post) throw IoError(fmt::format("failed writing index to '{}'", dir));
}

InvertedIndex InvertedIndex::load(const std::string& dir) {
  const fs::path docs_path = fs::path(dir) / "docs.tsv";
  const fs::path post_path = fs::path(dir) / "postings.tsv";
  InvertedIndex index;
  std::unordered_map<std::string, std::size_t> lookup;
  {
    auto in = open_input(docs_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto f = split_tabs(line);
      if (f.size() != 2) throw ParseError(docs_path.string(), line_no, "expected doc_id<TAB>length");
      if (!index.doc_ids_.empty() && f[0] <= index.doc_ids_.back()) {
        throw ParseError(docs_path.string(), line_no, "doc ids must be unique and sorted");
      }
      lookup.emplace(f[0], index.doc_ids_.size());
      index.doc_ids_.push_back(f[0]);
      index.doc_lengths_.push_back(parse_number<std::size_t>(f[1], docs_path.string(), line_no));
    }
  }
  auto in = open_input(post_path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 3) throw ParseError(post_path.string(), line_no, "expected term<TAB>doc_id<TAB>tf");
    const auto doc = lookup.find(f[1]);
    if (doc == lookup.end()) {
      throw ParseError(post_path.string(), line_no, fmt::format("unknown doc id '{}'", f[1]));
    }
    auto& list = index.postings_[f[0]];
    if (!list.empty() && list.back().doc >= doc->second) {
      throw ParseError(post_path.string(), line_no, "postings must be sorted by doc id");
    }
    list.push_back({doc->second, parse_number<std::size_t>(f[2], post_path.string(), line_no)});
  }
  return index;
}

std::optional<std::size_t> InvertedIndex::doc_index(std::string_view doc_id) const {
  const auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
  if (it == doc_ids_.end() || *it != doc_id) return std::nullopt;
  return static_cast<std::size_t>(it - doc_ids_.begin());
}

double InvertedIndex::average_length() const {
  if (doc_lengths_.empty()) return 0.0;
  const double total = std::accumulate(doc_lengths_.begin(), doc_lengths_.end(), 0.0);
  return total / static_cast<double>(doc_lengths_.size());
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  const auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

std::unordered_map<std::string, std::size_t> InvertedIndex::df_table() const {
  std::unordered_map<std::string, std::size_t> out;
  for (const auto& [term, list] : postings_) out.emplace(term, list.size());
  return out;
}

std::vector<std::string> RankedRun::doc_ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.doc_id);
  return out;
}

void sort_run(RankedRun& run) {
  std::sort(run.entries.begin(), run.entries.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
  });
}

double bm25_idf(std::size_t doc_count, std::size_t df) {
  const double n = static_cast<double>(doc_count);
  const double f = static_cast<double>(df);
  return std::log(1.0 + (n - f + 0.5) / (f + 0.5));
}

RankedRun score_baseline(const std::string& query_id, const std::vector<std::string>& query_terms,
                         const InvertedIndex& index, const Bm25Params& params) {
  if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
    throw ParameterError(fmt::format("BM25 needs k1 >= 0 and b in [0, 1], got k1={} b={}", params.k1,
                                     params.b));
  }
  RankedRun run;
  run.query_id = query_id;
  run.tag = "bm25";
  if (index.doc_count() == 0) return run;

  const double avg = index.average_length();
  std::map<std::size_t, double> scores;
  for (const auto& term : query_terms) {
    const auto list = index.postings(term);
    if (list.empty()) continue;
    const double idf = bm25_idf(index.doc_count(), list.size());
    for (const Posting& p : list) {
      const double tf = static_cast<double>(p.tf);
      const double len = static_cast<double>(index.doc_length(p.doc));
      const double norm = params.k1 * (1.0 - params.b + params.b * (avg > 0.0 ? len / avg : 1.0));
      scores[p.doc] += idf * (tf * (params.k1 + 1.0)) / (tf + norm);
    }
  }
  for (const auto& [doc, s] : scores) run.entries.push_back({index.doc_ids()[doc], s});
  sort_run(run);
  return run;
}

RankedRun Bm25Ranker::rank(const std::string& query_id,
                           const std::vector<std::string>& query_terms) const {
  return score_baseline(query_id, query_terms, index_, params_);
}

GraphWeightRanker::GraphWeightRanker(const InvertedIndex& index, const TermWeightTable& weights,
                                     double k)
    : index_(index), weights_(weights), df_(index.df_table()), k_(k) {
  if (!(k > 0.0)) throw ParameterError(fmt::format("saturation k must be positive, got {}", k));
}

RankedRun GraphWeightRanker::rank(const std::string& query_id,
                                  const std::vector<std::string>& query_terms) const {
  RankedRun run;
  run.query_id = query_id;
  run.tag = "graph-tw";
  std::set<std::size_t> candidates;
  for (const auto& term : query_terms) {
    for (const Posting& p : index_.postings(term)) candidates.insert(p.doc);
  }
  for (std::size_t doc : candidates) {
    const std::string& id = index_.doc_ids()[doc];
    const auto w = weights_.find(id);
    if (w == weights_.end()) continue;
    // Stopwords carry graph weight but have no postings; they cannot score.
    std::vector<std::string> scored;
    for (const auto& term : query_terms) {
      if (df_.contains(term)) scored.push_back(term);
    }
    run.entries.push_back({id, graphrank::tw_score(scored, w->second, index_.doc_count(), df_, k_)});
  }
  sort_run(run);
  return run;
}

TermWeightTable compute_term_weights(const text::Corpus& corpus, std::size_t window,
                                     const graphrank::RankOptions& options) {
  TermWeightTable table;
  for (const text::Document& doc : corpus) {
    const auto graph = graphrank::build_word_graph(doc, window);
    if (graph.empty()) continue;
    table.emplace(doc.doc_id, graphrank::rank_vertices(graph, options));
  }
  return table;
}

void save_term_weights(const TermWeightTable& table, const std::string& path) {
  auto out = open_output(path);
  for (const auto& [doc, tw] : table) {
    for (const auto& [term, w] : tw.sorted()) out << fmt::format("{}\t{}\t{:.17g}\n", doc, term, w);
  }
  if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

TermWeightTable load_term_weights(const std::string& path) {
  auto in = open_input(path);
  TermWeightTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 3) throw ParseError(path, line_no, "expected doc_id<TAB>term<TAB>weight");
    auto& tw = table[f[0]];
    tw.converged = true;
    tw.weights[f[1]] = parse_number<double>(f[2], path, line_no);
  }
  return table;
}

RankedRun interpolate_prior(const RankedRun& run, const std::map<std::string, double>& prior,
                            double lambda, double fallback) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParameterError(fmt::format("lambda must lie in [0, 1], got {}", lambda));
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& e : run.entries) {
    if (!std::isfinite(e.score)) {
      throw ValidationError(fmt::format("non-finite score for '{}' in query '{}'", e.doc_id, run.query_id));
    }
    lo = std::min(lo, e.score);
    hi = std::max(hi, e.score);
  }
  RankedRun out;
  out.query_id = run.query_id;
  out.tag = run.tag;
  out.entries.reserve(run.entries.size());
  for (const auto& e : run.entries) {
    const double norm = hi > lo ? (e.score - lo) / (hi - lo) : 0.0;
    const auto p = prior.find(e.doc_id);
    const double mix = p == prior.end() ? fallback : p->second;
    out.entries.push_back({e.doc_id, (1.0 - lambda) * norm + lambda * mix});
  }
  // lambda = 0 keeps the input permutation even when its scores are not
  // monotone in rank.
  if (lambda == 0.0) return out;
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const ScoredDoc& a, const ScoredDoc& b) { return a.score > b.score; });
  return out;
}

}  // namespace catenae::retrieval
