#include "catenae/trec.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::retrieval {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

template <typename T>
T number(const std::string& field, const std::string& source, std::size_t line) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line, fmt::format("'{}' is not a valid number", field));
  }
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  return in;
}

}  // namespace

std::vector<RankedRun> parse_run(std::istream& in, const std::string& source) {
  struct Row {
    long rank;
    std::size_t line;
    ScoredDoc doc;
  };
  std::vector<std::string> order;
  std::map<std::string, std::vector<Row>> rows;
  std::map<std::string, std::string> tags;
  std::map<std::string, std::set<std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_ws(line);
    if (f.empty()) continue;
    if (f.size() != 6) throw ParseError(source, line_no, "expected 'qid Q0 docid rank score tag'");
    if (!seen[f[0]].insert(f[2]).second) {
      throw ParseError(source, line_no, fmt::format("duplicate doc '{}' for query '{}'", f[2], f[0]));
    }
    if (!rows.contains(f[0])) {
      order.push_back(f[0]);
      tags[f[0]] = f[5];
    }
    rows[f[0]].push_back({number<long>(f[3], source, line_no), line_no,
                          {f[2], number<double>(f[4], source, line_no)}});
  }
  std::vector<RankedRun> runs;
  for (const auto& qid : order) {
    auto& list = rows[qid];
    std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
    RankedRun run;
    run.query_id = qid;
    run.tag = tags[qid];
    for (auto& r : list) run.entries.push_back(std::move(r.doc));
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<RankedRun> load_run(const std::string& path) {
  auto in = open(path);
  return parse_run(in, path);
}

void write_run(std::ostream& out, const RankedRun& run) {
  for (std::size_t i = 0; i < run.entries.size(); ++i) {
    out << fmt::format("{} Q0 {} {} {:.10g} {}\n", run.query_id, run.entries[i].doc_id, i + 1,
                       run.entries[i].score, run.tag);
  }
}

void write_runs(std::ostream& out, const std::vector<RankedRun>& runs) {
  for (const auto& run : runs) write_run(out, run);
}

Qrels parse_qrels(std::istream& in, const std::string& source) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_ws(line);
    if (f.empty()) continue;
    if (f.size() != 4) throw ParseError(source, line_no, "expected 'qid 0 docid grade'");
    const int grade = number<int>(f[3], source, line_no);
    if (grade < 0) throw ValidationError(fmt::format("{}:{}: negative grade {}", source, line_no, grade));
    qrels.add(f[0], f[2], grade);
  }
  return qrels;
}

Qrels load_qrels(const std::string& path) {
  auto in = open(path);
  return parse_qrels(in, path);
}

std::vector<QueryRecord> parse_queries(std::istream& in, const std::string& source) {
  std::vector<QueryRecord> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(source, line_no, "expected 'qid<TAB>query text'");
    }
    QueryRecord q{line.substr(0, tab), line.substr(tab + 1)};
    if (!ids.insert(q.query_id).second) {
      throw ParseError(source, line_no, fmt::format("duplicate query id '{}'", q.query_id));
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QueryRecord> load_queries(const std::string& path) {
  auto in = open(path);
  return parse_queries(in, path);
}

}  // namespace catenae::retrieval
