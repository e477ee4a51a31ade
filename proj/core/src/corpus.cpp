#include "catenae/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "catenae/error.hpp"

namespace catenae::text {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<RawDocument> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<RawDocument> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("text") ||
        !record["id"].is_string() || !record["text"].is_string()) {
      throw ParseError(path.string(), line_no, "expected {\"id\": string, \"text\": string}");
    }
    out.push_back({record["id"].get<std::string>(), record["text"].get<std::string>()});
  }
  return out;
}

}  // namespace

std::vector<RawDocument> read_raw_corpus(const std::string& path) {
  const fs::path root(path);
  std::vector<RawDocument> out;
  if (fs::is_directory(root)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back({f.stem().string(), slurp(f)});
  } else if (fs::is_regular_file(root)) {
    out = read_jsonl(root);
  } else {
    throw IoError(fmt::format("corpus path '{}' does not exist", path));
  }
  std::set<std::string> seen;
  for (const auto& d : out) {
    if (!seen.insert(d.doc_id).second) {
      throw ValidationError(fmt::format("duplicate doc id '{}' in corpus '{}'", d.doc_id, path));
    }
  }
  return out;
}

Corpus build_corpus(const std::vector<RawDocument>& raw, const CorpusOptions& options) {
  Corpus corpus;
  corpus.reserve(raw.size());
  for (const auto& r : raw) {
    corpus.push_back(make_document(r.doc_id, r.text, options.tokenize, options.segment));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, const CorpusOptions& options) {
  return build_corpus(read_raw_corpus(path), options);
}

AnnotationIndex load_annotation_dir(const std::string& dir, const Corpus& corpus) {
  if (!fs::is_directory(dir)) {
    throw IoError(fmt::format("annotation directory '{}' does not exist", dir));
  }
  AnnotationIndex out;
  for (const Document& doc : corpus) {
    const fs::path file = fs::path(dir) / (doc.doc_id + ".tsv");
    if (fs::is_regular_file(file)) out.emplace(doc.doc_id, load_annotations(file.string(), &doc));
  }
  return out;
}

AnnotationIndex load_annotation_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError(fmt::format("annotation directory '{}' does not exist", dir));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  AnnotationIndex out;
  for (const auto& f : files) out.emplace(f.stem().string(), load_annotations(f.string()));
  return out;
}

}  // namespace catenae::text
