#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "catenae/bipartite.hpp"
#include "catenae/comp.hpp"
#include "catenae/corpus.hpp"
#include "catenae/dot.hpp"
#include "catenae/entitygrid.hpp"
#include "catenae/error.hpp"
#include "catenae/fusion_json.hpp"
#include "catenae/graphrank.hpp"
#include "catenae/metrics.hpp"
#include "catenae/retrieval.hpp"
#include "catenae/rhetoric.hpp"
#include "catenae/slogic.hpp"
#include "catenae/trec.hpp"

namespace catenae::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out_path;
  std::size_t threads = 0;
  std::string config;  // consumed before parsing; listed for --help
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_path, "Write primary output to this file instead of stdout");
  sub->add_option("--threads", c.threads, "Worker threads (default: $CATENAE_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--config", c.config, "key=value file; flags on the command line take precedence");
}

std::size_t resolve_threads(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CATENAE_THREADS"); env != nullptr && *env != '\0') {
    std::size_t n = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec != std::errc() || ptr != end || n == 0) {
      throw ParameterError(fmt::format("CATENAE_THREADS must be a positive integer, got '{}'", env));
    }
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n). Results must be written to per-index slots,
/// so output never depends on the thread count. The lowest-index exception
/// is rethrown.
template <typename F>
void parallel_for(std::size_t n, std::size_t threads, F&& body) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_path(const std::string& path, std::string_view what) {
  if (path.empty()) return;
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError(fmt::format("{} '{}' does not exist", what, path));
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot open '{}' for writing", c.out_path));
  file << text;
  file.close();
  if (!file) throw IoError(fmt::format("failed writing '{}'", c.out_path));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool mentions_option(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

/// Expands --config FILE into --key=value arguments for keys the command
/// line does not already set.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParameterError("--config needs a file argument");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';' || body.front() == '[') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(path, line_no, "expected key=value");
    const auto key = trim(std::string_view(body).substr(0, eq));
    auto value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(path, line_no, "empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (!mentions_option(args, flag)) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::vector<std::string> query_terms(const std::string& query) {
  static const text::TokenizeConfig config = [] {
    text::TokenizeConfig c;
    c.remove_stopwords = true;
    c.stopwords = text::default_stopwords();
    return c;
  }();
  std::vector<std::string> terms;
  for (const auto& t : text::tokenize(query, config)) terms.push_back(t.normalized);
  return terms;
}

std::vector<retrieval::QueryRecord> collect_queries(const std::string& file, const std::string& query,
                                                    const std::string& qid) {
  if (!file.empty() && !query.empty()) throw ParameterError("give either --query or --queries, not both");
  if (!file.empty()) return retrieval::load_queries(file);
  if (query.empty()) throw ParameterError("one of --query or --queries is required");
  return {{qid, query}};
}

template <typename E>
E choose(const std::map<std::string, E>& table, const std::string& value, std::string_view flag) {
  const auto it = table.find(value);
  if (it == table.end()) throw ParameterError(fmt::format("invalid value '{}' for {}", value, flag));
  return it->second;
}

std::string path_join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", dir, ec.message()));
}

retrieval::TermWeightTable weigh_corpus(const text::Corpus& corpus, std::size_t window,
                                        graphrank::EdgeMode mode, const text::AnnotationIndex* annotations,
                                        const graphrank::RankOptions& options, std::size_t threads) {
  std::vector<std::optional<graphrank::TermWeights>> slots(corpus.size());
  const text::AnnotationSet none;
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto& doc = corpus[i];
    const text::AnnotationSet* ann = nullptr;
    if (mode == graphrank::EdgeMode::kDirectedByAnnotation) {
      ann = &none;
      if (annotations != nullptr) {
        if (const auto it = annotations->find(doc.doc_id); it != annotations->end()) ann = &it->second;
      }
    }
    const auto graph = graphrank::build_word_graph(doc, window, mode, ann);
    if (!graph.empty()) slots[i] = graphrank::rank_vertices(graph, options);
  });
  retrieval::TermWeightTable table;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (slots[i]) table.emplace(corpus[i].doc_id, std::move(*slots[i]));
  }
  return table;
}

// ---- index ---------------------------------------------------------------

struct IndexArgs {
  std::string corpus;
  std::string index_dir;
  std::size_t window = 10;
};

int cmd_index(const IndexArgs& a, const Common& c, std::ostream& out) {
  require_path(a.corpus, "corpus");
  if (a.window < 2) throw ParameterError("--window must be at least 2");
  const auto corpus = text::load_corpus(a.corpus);
  const auto index = retrieval::InvertedIndex::build(corpus);
  const auto weights = weigh_corpus(corpus, a.window, graphrank::EdgeMode::kUndirected, nullptr, {},
                                    resolve_threads(c.threads));
  make_dir(a.index_dir);
  index.save(a.index_dir);
  retrieval::save_term_weights(weights, path_join(a.index_dir, "termweights.tsv"));
  emit(c, out, fmt::format("documents\t{}\nterms\t{}\n", index.doc_count(), index.all_postings().size()));
  return 0;
}

// ---- search --------------------------------------------------------------

struct SearchArgs {
  std::string index_dir;
  std::string queries;
  std::string query;
  std::string qid = "q1";
  std::string model = "bm25";
  std::size_t depth = 1000;
  double k1 = 1.2;
  double b = 0.75;
  double tw_k = 1.0;
};

int cmd_search(const SearchArgs& a, const Common& c, std::ostream& out) {
  require_path(a.index_dir, "index");
  require_path(a.queries, "queries");
  const auto queries = collect_queries(a.queries, a.query, a.qid);
  const auto index = retrieval::InvertedIndex::load(a.index_dir);
  retrieval::TermWeightTable weights;
  std::unique_ptr<retrieval::Ranker> ranker;
  if (a.model == "bm25") {
    ranker = std::make_unique<retrieval::Bm25Ranker>(index, retrieval::Bm25Params{a.k1, a.b});
  } else {
    const auto tw_path = path_join(a.index_dir, "termweights.tsv");
    require_path(tw_path, "term weights");
    weights = retrieval::load_term_weights(tw_path);
    ranker = std::make_unique<retrieval::GraphWeightRanker>(index, weights, a.tw_k);
  }
  std::vector<retrieval::RankedRun> runs(queries.size());
  parallel_for(queries.size(), resolve_threads(c.threads), [&](std::size_t i) {
    runs[i] = ranker->rank(queries[i].query_id, query_terms(queries[i].text));
    if (runs[i].entries.size() > a.depth) runs[i].entries.resize(a.depth);
  });
  std::ostringstream text;
  retrieval::write_runs(text, runs);
  emit(c, out, text.str());
  return 0;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string run;
  std::string qrels;
  std::string metric = "ndcg@10";
};

int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto spec = retrieval::parse_metric(a.metric);
  require_path(a.run, "run");
  require_path(a.qrels, "qrels");
  const auto runs = retrieval::load_run(a.run);
  const auto qrels = retrieval::load_qrels(a.qrels);
  const auto report = retrieval::evaluate_runs(runs, qrels, spec);
  for (const auto& q : report.skipped) {
    err << fmt::format("catenae: warning: query '{}' has no judgments in '{}'; skipped\n", q, a.qrels);
  }
  const auto name = retrieval::to_string(spec);
  std::string text;
  for (const auto& row : report.rows) text += fmt::format("{}\t{}\t{:.6f}\n", row.query_id, name, row.value);
  text += fmt::format("all\t{}\t{:.6f}\n", name, report.mean);
  emit(c, out, text);
  return 0;
}

// ---- weigh ---------------------------------------------------------------

struct WeighArgs {
  std::string corpus;
  std::string annotations;
  std::size_t window = 10;
  double damping = 0.85;
  double tolerance = 1e-8;
  std::size_t max_iterations = 100;
  std::string centrality = "pagerank";
  bool directed = false;
  bool remove_stopwords = false;
  std::size_t top = 0;
};

int cmd_weigh(const WeighArgs& a, const Common& c, std::ostream& out) {
  graphrank::RankOptions options;
  options.damping = a.damping;
  options.tolerance = a.tolerance;
  options.max_iterations = a.max_iterations;
  options.centrality = choose<graphrank::Centrality>(
      {{"pagerank", graphrank::Centrality::kPageRank}, {"degree", graphrank::Centrality::kWeightedDegree}},
      a.centrality, "--centrality");
  if (a.window < 2) throw ParameterError("--window must be at least 2");
  if (a.directed && a.annotations.empty()) throw ParameterError("--directed needs --annotations");
  require_path(a.corpus, "corpus");
  require_path(a.annotations, "annotations");

  text::CorpusOptions copts;
  copts.tokenize.remove_stopwords = a.remove_stopwords;
  if (a.remove_stopwords) copts.tokenize.stopwords = text::default_stopwords();
  const auto corpus = text::load_corpus(a.corpus, copts);
  text::AnnotationIndex annotations;
  if (a.directed) annotations = text::load_annotation_dir(a.annotations);
  const auto mode = a.directed ? graphrank::EdgeMode::kDirectedByAnnotation : graphrank::EdgeMode::kUndirected;
  const auto table = weigh_corpus(corpus, a.window, mode, &annotations, options, resolve_threads(c.threads));

  std::string text;
  for (const auto& doc : corpus) {
    const auto it = table.find(doc.doc_id);
    if (it == table.end()) continue;
    const auto sorted = it->second.sorted();
    const std::size_t n = a.top == 0 ? sorted.size() : std::min(a.top, sorted.size());
    for (std::size_t i = 0; i < n; ++i) {
      text += fmt::format("{}\t{}\t{:.10g}\n", doc.doc_id, sorted[i].first, sorted[i].second);
    }
  }
  emit(c, out, text);
  return 0;
}

// ---- comp ----------------------------------------------------------------

struct CompArgs {
  std::string corpus;
  std::string phrases;
  std::string synonyms;
  std::string model = "kl";
  std::string metric = "spearman";
  std::string weighting = "tf";
  std::string aggregate = "mean";
  std::size_t k = 50;
  std::size_t window = 5;
  double epsilon = 1e-6;
};

std::vector<comp::Phrase> load_phrases(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  std::vector<comp::Phrase> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    comp::Phrase phrase;
    std::istringstream words(body);
    std::string w;
    while (words >> w) {
      auto n = text::normalize(w);
      if (!n.empty()) phrase.push_back(std::move(n));
    }
    if (phrase.empty()) throw ParseError(path, line_no, "phrase has no terms after normalization");
    out.push_back(std::move(phrase));
  }
  return out;
}

int cmd_comp(const CompArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto aggregation = choose<comp::Aggregation>(
      {{"mean", comp::Aggregation::kMean}, {"max", comp::Aggregation::kMax}}, a.aggregate, "--aggregate");
  const auto weighting = choose<comp::Weighting>(
      {{"tf", comp::Weighting::kTf}, {"tfidf", comp::Weighting::kTfIdf}}, a.weighting, "--weighting");
  if (a.model != "kl" && a.model != "rank") throw ParameterError(fmt::format("invalid --model '{}'", a.model));
  const auto metric = comp::parse_association_metric(a.metric);
  if (a.window < 1) throw ParameterError("--window must be at least 1");
  if (a.k < 1) throw ParameterError("--k must be at least 1");
  if (!(a.epsilon > 0.0)) throw ParameterError("--epsilon must be positive");
  require_path(a.corpus, "corpus");
  require_path(a.phrases, "phrases");
  require_path(a.synonyms, "synonyms");

  const auto corpus = text::load_corpus(a.corpus);
  const auto phrases = load_phrases(a.phrases);
  const auto synonyms = text::load_synonyms(a.synonyms);
  comp::ProfileOptions profile;
  profile.window = a.window;
  const std::string model_name = a.model == "kl" ? "kl" : "rank:" + comp::to_string(metric);

  struct Slot {
    std::optional<double> score;
    std::string error;
    int code = 0;
  };
  std::vector<Slot> slots(phrases.size());
  parallel_for(phrases.size(), resolve_threads(c.threads), [&](std::size_t i) {
    try {
      if (a.model == "kl") {
        slots[i].score = comp::compositionality_kl(phrases[i], corpus, synonyms, {profile, a.epsilon, aggregation}).score;
      } else {
        comp::RankCompOptions o;
        o.profile = profile;
        o.k = a.k;
        o.weighting = weighting;
        o.metric = metric;
        o.aggregation = aggregation;
        slots[i].score = comp::compositionality_rank(phrases[i], corpus, synonyms, o).score;
      }
    } catch (const Error& e) {
      slots[i].error = fmt::format("{}: {}", to_string(e.kind()), e.what());
      slots[i].code = exit_code_for(e.kind());
    }
  });

  std::string text;
  int code = 0;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    if (slots[i].score) {
      text += fmt::format("{}\t{}\t{:.10g}\n", comp::join(phrases[i]), model_name, *slots[i].score);
    } else {
      err << fmt::format("catenae: comp: phrase '{}': {}\n", comp::join(phrases[i]), slots[i].error);
      code = std::max(code, slots[i].code);
    }
  }
  emit(c, out, text);
  return code;
}

// ---- rerank-rst ----------------------------------------------------------

struct RerankArgs {
  std::string run;
  std::string annotations;
  double lambda = 0.5;
  std::size_t cutoff = 10;
  bool per_query = false;
};

int cmd_rerank(const RerankArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) throw ParameterError("--lambda must lie in [0, 1]");
  if (a.cutoff == 0) throw ParameterError("--cutoff must be at least 1");
  require_path(a.run, "run");
  require_path(a.annotations, "annotations");
  const auto runs = retrieval::load_run(a.run);
  const auto annotations = text::load_annotation_dir(a.annotations);
  const auto stats = rhetoric::relation_stats(runs, annotations, a.cutoff);
  if (!stats.unannotated_docs.empty()) {
    err << fmt::format("catenae: warning: {} run documents have no annotations\n", stats.unannotated_docs.size());
  }
  std::vector<retrieval::RankedRun> out_runs(runs.size());
  parallel_for(runs.size(), resolve_threads(c.threads), [&](std::size_t i) {
    if (!a.per_query) {
      out_runs[i] = rhetoric::rerank_rhetorical(runs[i], annotations, stats, a.lambda);
      return;
    }
    const auto own = rhetoric::relation_stats(std::span(&runs[i], 1), annotations, a.cutoff);
    out_runs[i] = rhetoric::rerank_rhetorical(runs[i], annotations, own, a.lambda);
  });
  std::ostringstream text;
  retrieval::write_runs(text, out_runs);
  emit(c, out, text.str());
  return 0;
}

// ---- coherence -----------------------------------------------------------

struct CoherenceArgs {
  std::string corpus;
  std::string annotations;
  std::string mode = "entropy";
  std::string entropy = "transition";
  std::string weighting = "mentions";
  std::size_t shuffles = 20;
  std::uint64_t seed = 42;
};

int cmd_coherence(const CoherenceArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  enum class Mode { kEntropy, kProjection, kDirect };
  const auto mode = choose<Mode>(
      {{"entropy", Mode::kEntropy}, {"projection", Mode::kProjection}, {"direct", Mode::kDirect}}, a.mode,
      "--mode");
  const auto emode = choose<entitygrid::EntropyMode>(
      {{"symbol", entitygrid::EntropyMode::kSymbol}, {"transition", entitygrid::EntropyMode::kTransition}},
      a.entropy, "--entropy");
  const auto weighting = choose<entitygrid::Weighting>(
      {{"mentions", entitygrid::Weighting::kMentions}, {"uniform", entitygrid::Weighting::kUniform}},
      a.weighting, "--weighting");
  if (a.shuffles == 0) throw ParameterError("--shuffles must be at least 1");
  require_path(a.corpus, "corpus");
  require_path(a.annotations, "annotations");

  struct Item {
    std::string doc_id;
    std::size_t sentences = 0;
    const std::vector<text::EntityMention>* mentions = nullptr;
  };
  static const std::vector<text::EntityMention> kNoMentions;
  text::Corpus corpus;
  text::AnnotationIndex annotations;
  std::vector<Item> items;
  if (!a.corpus.empty()) {
    corpus = text::load_corpus(a.corpus);
    annotations = text::load_annotation_dir(a.annotations, corpus);
    for (const auto& doc : corpus) {
      const auto it = annotations.find(doc.doc_id);
      items.push_back({doc.doc_id, doc.sentence_count(),
                       it == annotations.end() ? &kNoMentions : &it->second.entity_mentions});
    }
  } else {
    // Without a corpus the sentence count is inferred from the mentions.
    annotations = text::load_annotation_dir(a.annotations);
    for (const auto& [id, set] : annotations) {
      std::size_t n = 0;
      for (const auto& m : set.entity_mentions) n = std::max(n, m.sentence_index + 1);
      items.push_back({id, n, &set.entity_mentions});
    }
  }

  struct Row {
    double score = 0.0;
    std::optional<double> accuracy;
    std::string note;
  };
  std::vector<Row> rows(items.size());
  parallel_for(items.size(), resolve_threads(c.threads), [&](std::size_t i) {
    const auto& item = items[i];
    const auto grid = entitygrid::build_grid(item.sentences, *item.mentions);
    switch (mode) {
      case Mode::kEntropy:
        rows[i].score = entitygrid::doc_coherence_entropy(grid, emode, weighting).value;
        break;
      case Mode::kProjection:
        rows[i].score = bipartite::coherence_score_bipartite(grid, bipartite::CoherenceMode::kProjection);
        break;
      case Mode::kDirect:
        rows[i].score = bipartite::coherence_score_bipartite(grid, bipartite::CoherenceMode::kDirect);
        break;
    }
    entitygrid::ReorderOptions ro;
    ro.shuffles = a.shuffles;
    ro.seed = a.seed;
    // Bipartite scores are invariant under sentence permutation, so the
    // reorder test always scores with entropy.
    ro.mode = mode == Mode::kEntropy ? emode : entitygrid::EntropyMode::kTransition;
    ro.weighting = weighting;
    try {
      rows[i].accuracy = entitygrid::reorder_eval(item.sentences, *item.mentions, ro).accuracy;
    } catch (const DomainError& e) {
      rows[i].note = e.what();
    }
  });

  std::string text;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!rows[i].accuracy) {
      err << fmt::format("catenae: warning: '{}': {}; accuracy reported as NA\n", items[i].doc_id, rows[i].note);
    }
    text += fmt::format("{}\t{:.10g}\t{}\n", items[i].doc_id, rows[i].score,
                        rows[i].accuracy ? fmt::format("{:.10g}", *rows[i].accuracy) : std::string("NA"));
  }
  emit(c, out, text);
  return 0;
}

// ---- fuse ----------------------------------------------------------------

struct FuseArgs {
  std::string tree;
  std::string forest;
  bool dogmatic_limit = false;
};

int cmd_fuse(const FuseArgs& a, const Common& c, std::ostream& out) {
  if (a.tree.empty() == a.forest.empty()) throw ParameterError("give exactly one of --tree or --forest");
  const slogic::ConsensusOptions options{a.dogmatic_limit};
  auto inline_json = [](const std::string& v) { return !v.empty() && v.front() == '{'; };
  if (!a.tree.empty()) {
    slogic::FusionNode tree;
    if (inline_json(a.tree)) {
      tree = slogic::parse_fusion_tree(a.tree, "--tree");
    } else {
      require_path(a.tree, "tree");
      tree = slogic::load_fusion_tree(a.tree);
    }
    emit(c, out, slogic::opinion_to_json(slogic::fuse(tree, options)) + "\n");
    return 0;
  }
  slogic::FusionForest forest;
  if (inline_json(a.forest)) {
    forest = slogic::parse_fusion_forest(a.forest, "--forest");
  } else {
    require_path(a.forest, "forest");
    forest = slogic::load_fusion_forest(a.forest);
  }
  std::ostringstream text;
  retrieval::write_run(text, slogic::polyrep_rank(forest.query_id, forest.trees, options));
  emit(c, out, text.str());
  return 0;
}

// ---- difficulty ----------------------------------------------------------

struct DifficultyArgs {
  std::string index_dir;
  std::string query;
  std::string queries;
  std::string qid = "q1";
  double base_rate = 0.5;
  double gamma = 0.0;
  std::string evidence = "occurrence";
};

int cmd_difficulty(const DifficultyArgs& a, const Common& c, std::ostream& out) {
  slogic::DifficultyOptions options;
  options.base_rate = a.base_rate;
  if (a.gamma != 0.0) options.gamma = a.gamma;
  options.model = choose<slogic::EvidenceModel>(
      {{"occurrence", slogic::EvidenceModel::kOccurrence}, {"contrast", slogic::EvidenceModel::kContrast}},
      a.evidence, "--evidence");
  if (!(a.base_rate >= 0.0 && a.base_rate <= 1.0)) throw ParameterError("--base-rate must lie in [0, 1]");
  require_path(a.index_dir, "index");
  require_path(a.queries, "queries");
  const auto queries = collect_queries(a.queries, a.query, a.qid);
  const auto index = retrieval::InvertedIndex::load(a.index_dir);
  std::vector<double> values(queries.size());
  parallel_for(queries.size(), resolve_threads(c.threads), [&](std::size_t i) {
    values[i] = slogic::query_difficulty(query_terms(queries[i].text), index, options);
  });
  std::string text;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    text += fmt::format("{}\t{:.10g}\n", queries[i].query_id, values[i]);
  }
  emit(c, out, text);
  return 0;
}

// ---- graph dump ----------------------------------------------------------

struct GraphArgs {
  std::string corpus;
  std::string doc;
  std::string annotations;
  std::string kind = "words";
  std::string format = "dot";
  std::size_t window = 10;
  bool directed = false;
  bool role_weights = false;
};

int cmd_graph_dump(const GraphArgs& a, const Common& c, std::ostream& out) {
  if (a.format != "dot") throw ParameterError(fmt::format("unsupported --format '{}'", a.format));
  enum class Kind { kWords, kBipartite, kSentences, kEntities };
  const auto kind = choose<Kind>({{"words", Kind::kWords},
                                  {"bipartite", Kind::kBipartite},
                                  {"sentences", Kind::kSentences},
                                  {"entities", Kind::kEntities}},
                                 a.kind, "--kind");
  if (kind != Kind::kWords && a.annotations.empty()) throw ParameterError("--kind needs --annotations");
  if (a.directed && a.annotations.empty()) throw ParameterError("--directed needs --annotations");
  require_path(a.corpus, "corpus");
  require_path(a.annotations, "annotations");
  const auto corpus = text::load_corpus(a.corpus);
  const auto doc = std::find_if(corpus.begin(), corpus.end(), [&](const auto& d) { return d.doc_id == a.doc; });
  if (doc == corpus.end()) throw LookupError(fmt::format("document '{}' is not in '{}'", a.doc, a.corpus));
  text::AnnotationSet ann;
  if (!a.annotations.empty()) {
    const auto all = text::load_annotation_dir(a.annotations, corpus);
    if (const auto it = all.find(a.doc); it != all.end()) ann = it->second;
  }
  std::string text;
  if (kind == Kind::kWords) {
    const auto mode = a.directed ? graphrank::EdgeMode::kDirectedByAnnotation : graphrank::EdgeMode::kUndirected;
    text = dot::to_dot(graphrank::build_word_graph(*doc, a.window, mode, &ann), a.doc);
  } else {
    const auto g = bipartite::grid_to_bipartite(entitygrid::build_grid(*doc, ann), a.role_weights);
    if (kind == Kind::kBipartite) {
      text = dot::to_dot(g, a.doc);
    } else {
      const auto side = kind == Kind::kSentences ? bipartite::Side::kSentences : bipartite::Side::kEntities;
      text = dot::to_dot(bipartite::project(g, side), a.doc);
    }
  }
  emit(c, out, text);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  try {
    const auto args = apply_config(raw_args);

    CLI::App app{"Semantic dependence models for retrieval: indexing, ranking, evaluation,\n"
                 "graph term weighting, compositionality, discourse coherence, opinion fusion.",
                 "catenae"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Common common;

    IndexArgs index_args;
    auto* index = app.add_subcommand("index", "Build an inverted index and graph term weights");
    index->add_option("--corpus", index_args.corpus, "Directory of .txt files or a JSONL file")->required();
    index->add_option("--index", index_args.index_dir, "Output directory")->required();
    index->add_option("--window", index_args.window, "Co-occurrence window for term weights")->capture_default_str();
    add_common(index, common);

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Rank documents for queries; emits a TREC run");
    search->add_option("--index", search_args.index_dir, "Index directory")->required();
    search->add_option("--queries", search_args.queries, "qid<TAB>text file");
    search->add_option("--query", search_args.query, "Single query text");
    search->add_option("--qid", search_args.qid, "Query id for --query")->capture_default_str();
    search->add_option("--model", search_args.model, "bm25 or tw")
        ->check(CLI::IsMember({"bm25", "tw"}))
        ->capture_default_str();
    search->add_option("--depth", search_args.depth, "Documents kept per query")->capture_default_str();
    search->add_option("--k1", search_args.k1, "BM25 k1")->check(CLI::NonNegativeNumber)->capture_default_str();
    search->add_option("--b", search_args.b, "BM25 b")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    search->add_option("--tw-k", search_args.tw_k, "Saturation constant for tw")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(search, common);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate a TREC run against qrels");
    eval->add_option("--run", eval_args.run, "TREC run file")->required();
    eval->add_option("--qrels", eval_args.qrels, "TREC qrels file")->required();
    eval->add_option("--metric", eval_args.metric, "p@K, ndcg@K, err@K, mrr, bpref")->capture_default_str();
    add_common(eval, common);

    WeighArgs weigh_args;
    auto* weigh = app.add_subcommand("weigh", "Graph-of-words term weights per document");
    weigh->add_option("--corpus", weigh_args.corpus, "Directory of .txt files or a JSONL file")->required();
    weigh->add_option("--annotations", weigh_args.annotations, "Annotation directory (for --directed)");
    weigh->add_option("--window", weigh_args.window, "Co-occurrence window")->capture_default_str();
    weigh->add_option("--damping", weigh_args.damping, "PageRank damping")->capture_default_str();
    weigh->add_option("--tolerance", weigh_args.tolerance, "L1 convergence tolerance")->capture_default_str();
    weigh->add_option("--max-iter", weigh_args.max_iterations, "Iteration cap")->capture_default_str();
    weigh->add_option("--centrality", weigh_args.centrality, "pagerank or degree")->capture_default_str();
    weigh->add_flag("--directed", weigh_args.directed, "Orient edges by modifier annotations");
    weigh->add_flag("--remove-stopwords", weigh_args.remove_stopwords, "Drop stopwords before building graphs");
    weigh->add_option("--top", weigh_args.top, "Terms per document (0 = all)")->capture_default_str();
    add_common(weigh, common);

    CompArgs comp_args;
    auto* compc = app.add_subcommand("comp", "Phrase compositionality scores");
    compc->add_option("--corpus", comp_args.corpus, "Directory of .txt files or a JSONL file")->required();
    compc->add_option("--phrases", comp_args.phrases, "One phrase per line")->required();
    compc->add_option("--synonyms", comp_args.synonyms, "term<TAB>syn1,syn2 lexicon")->required();
    compc->add_option("--model", comp_args.model, "kl or rank")->capture_default_str();
    compc->add_option("--metric", comp_args.metric, "pearson, spearman, kendall, jaccard, overlap@K")
        ->capture_default_str();
    compc->add_option("--weighting", comp_args.weighting, "tf or tfidf (rank model)")->capture_default_str();
    compc->add_option("--aggregate", comp_args.aggregate, "mean or max over perturbations")->capture_default_str();
    compc->add_option("--k", comp_args.k, "Ranked list length (rank model)")->capture_default_str();
    compc->add_option("--window", comp_args.window, "Context window")->capture_default_str();
    compc->add_option("--epsilon", comp_args.epsilon, "KL smoothing")->capture_default_str();
    add_common(compc, common);

    RerankArgs rerank_args;
    auto* rerank = app.add_subcommand("rerank-rst", "Re-rank a run with rhetorical relation priors");
    rerank->add_option("--run", rerank_args.run, "Baseline TREC run")->required();
    rerank->add_option("--annotations", rerank_args.annotations, "Annotation directory")->required();
    rerank->add_option("--lambda", rerank_args.lambda, "Prior weight in [0, 1]")->capture_default_str();
    rerank->add_option("--cutoff", rerank_args.cutoff, "Rank cutoff for retrieved spans")->capture_default_str();
    rerank->add_flag("--per-query", rerank_args.per_query, "Estimate relation probabilities from each query's run alone");
    add_common(rerank, common);

    CoherenceArgs coh_args;
    auto* coherence = app.add_subcommand("coherence", "Entity-grid coherence and reordering accuracy");
    coherence->add_option("--corpus", coh_args.corpus, "Corpus (sentence counts); optional");
    coherence->add_option("--annotations", coh_args.annotations, "Annotation directory")->required();
    coherence->add_option("--mode", coh_args.mode, "entropy, projection, or direct")->capture_default_str();
    coherence->add_option("--entropy", coh_args.entropy, "symbol or transition")->capture_default_str();
    coherence->add_option("--weighting", coh_args.weighting, "mentions or uniform")->capture_default_str();
    coherence->add_option("--shuffles", coh_args.shuffles, "Sentence permutations per document")
        ->capture_default_str();
    coherence->add_option("--seed", coh_args.seed, "Permutation seed")->capture_default_str();
    add_common(coherence, common);

    FuseArgs fuse_args;
    auto* fuse = app.add_subcommand("fuse", "Fuse subjective-logic opinions from a JSON tree");
    fuse->add_option("--tree", fuse_args.tree, "Tree JSON file or inline JSON");
    fuse->add_option("--forest", fuse_args.forest, "{\"query\":..,\"docs\":{..}} file; emits a TREC run");
    fuse->add_flag("--dogmatic-limit", fuse_args.dogmatic_limit, "Average two dogmatic opinions instead of failing");
    add_common(fuse, common);

    DifficultyArgs diff_args;
    auto* difficulty = app.add_subcommand("difficulty", "Query difficulty as fused uncertainty");
    difficulty->add_option("--index", diff_args.index_dir, "Index directory")->required();
    difficulty->add_option("--query", diff_args.query, "Single query text");
    difficulty->add_option("--queries", diff_args.queries, "qid<TAB>text file");
    difficulty->add_option("--qid", diff_args.qid, "Query id for --query")->capture_default_str();
    difficulty->add_option("--base-rate", diff_args.base_rate, "Opinion base rate")->capture_default_str();
    difficulty->add_option("--gamma", diff_args.gamma, "Evidence scale (default: documents / 100)")
        ->check(CLI::PositiveNumber);
    difficulty->add_option("--evidence", diff_args.evidence, "occurrence or contrast")->capture_default_str();
    add_common(difficulty, common);

    GraphArgs graph_args;
    auto* graph = app.add_subcommand("graph", "Graph inspection");
    graph->require_subcommand(1);
    auto* dump = graph->add_subcommand("dump", "Write one document's graph as Graphviz text");
    dump->add_option("--corpus", graph_args.corpus, "Directory of .txt files or a JSONL file")->required();
    dump->add_option("--doc", graph_args.doc, "Document id")->required();
    dump->add_option("--annotations", graph_args.annotations, "Annotation directory");
    dump->add_option("--kind", graph_args.kind, "words, bipartite, sentences, entities")->capture_default_str();
    dump->add_option("--format", graph_args.format, "Output format")->capture_default_str();
    dump->add_option("--window", graph_args.window, "Co-occurrence window (words)")->capture_default_str();
    dump->add_flag("--directed", graph_args.directed, "Orient word edges by modifier annotations");
    dump->add_flag("--role-weights", graph_args.role_weights, "Weight bipartite edges s=3, o=2, x=1");
    add_common(dump, common);

    std::vector<const char*> argv{"catenae"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 1;
    }

    if (*index) return cmd_index(index_args, common, out);
    if (*search) return cmd_search(search_args, common, out);
    if (*eval) return cmd_eval(eval_args, common, out, err);
    if (*weigh) return cmd_weigh(weigh_args, common, out);
    if (*compc) return cmd_comp(comp_args, common, out, err);
    if (*rerank) return cmd_rerank(rerank_args, common, out, err);
    if (*coherence) return cmd_coherence(coh_args, common, out, err);
    if (*fuse) return cmd_fuse(fuse_args, common, out);
    if (*difficulty) return cmd_difficulty(diff_args, common, out);
    if (*dump) return cmd_graph_dump(graph_args, common, out);
    err << app.help();
    return 1;
  } catch (const Error& e) {
    err << fmt::format("catenae: {}: {}\n", to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << fmt::format("catenae: error: {}\n", e.what());
    return 2;
  }
}

}  // namespace catenae::cli
