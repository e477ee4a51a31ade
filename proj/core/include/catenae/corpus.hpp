#pragma once

#include <map>
#include <string>
#include <vector>

#include "catenae/annotations.hpp"
#include "catenae/text.hpp"

namespace catenae::text {

using Corpus = std::vector<Document>;

struct RawDocument {
  std::string doc_id;
  std::string text;
};

struct CorpusOptions {
  TokenizeConfig tokenize;
  SegmentConfig segment{default_abbreviations()};
};

/// Reads either a directory of `.txt` files (doc id = file stem, sorted by
/// file name) or a JSON-lines file with `{"id": ..., "text": ...}` records.
/// Throws IoError, ParseError, or ValidationError on duplicate ids.
std::vector<RawDocument> read_raw_corpus(const std::string& path);

Corpus load_corpus(const std::string& path, const CorpusOptions& options = {});
Corpus build_corpus(const std::vector<RawDocument>& raw, const CorpusOptions& options = {});

using AnnotationIndex = std::map<std::string, AnnotationSet>;

/// Loads `<dir>/<doc_id>.tsv` for every document that has one. Spans are
/// validated against the matching document.
AnnotationIndex load_annotation_dir(const std::string& dir, const Corpus& corpus);

/// Loads every `*.tsv` in `dir` without bounds checks, keyed by file stem.
AnnotationIndex load_annotation_dir(const std::string& dir);

}  // namespace catenae::text
