#include "catenae/annotations.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "catenae/error.hpp"

namespace catenae::text {

namespace {

constexpr std::array<std::string_view, 15> kRelationLabels = {
    "attribution", "background",  "cause-result", "comparison",   "condition",
    "consequence", "contrast",    "elaboration",  "enablement",   "evaluation",
    "explanation", "manner-means", "summary",     "temporal",     "topic-comment",
};

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

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::size_t parse_index(const std::string& field, const std::string& source, std::size_t line,
                        std::string_view what) {
  std::size_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(source, line, fmt::format("{} '{}' is not a non-negative integer", what, field));
  }
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

char to_char(Role role) { return static_cast<char>(role); }

Role role_from_char(char c) {
  switch (c) {
    case 's': return Role::kSubject;
    case 'o': return Role::kObject;
    case 'x': return Role::kOther;
    case '-': return Role::kAbsent;
    default:
      throw ValidationError(fmt::format("unknown syntactic role '{}' (expected s, o or x)", c));
  }
}

const std::array<std::string_view, 15>& relation_labels() { return kRelationLabels; }

bool is_relation_label(std::string_view label) {
  return std::binary_search(kRelationLabels.begin(), kRelationLabels.end(), label);
}

AnnotationSet parse_annotations(std::istream& in, const Document* doc,
                                const std::string& source_name) {
  AnnotationSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    const std::string& kind = fields.front();
    if (kind == "ent") {
      if (fields.size() != 4) {
        throw ParseError(source_name, line_no, "ent record needs 4 tab-separated fields");
      }
      if (fields[3].size() != 1 || fields[3] == "-") {
        throw ValidationError(fmt::format("{}:{}: role '{}' is not one of s, o, x", source_name,
                                          line_no, fields[3]));
      }
      EntityMention m;
      m.sentence_index = parse_index(fields[1], source_name, line_no, "sentence index");
      m.entity_id = fields[2];
      if (m.entity_id.empty()) throw ParseError(source_name, line_no, "empty entity id");
      try {
        m.role = role_from_char(fields[3][0]);
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}:{}: {}", source_name, line_no, e.what()));
      }
      out.entity_mentions.push_back(std::move(m));
    } else if (kind == "rel") {
      if (fields.size() != 4) {
        throw ParseError(source_name, line_no, "rel record needs 4 tab-separated fields");
      }
      if (!is_relation_label(fields[1])) {
        throw ValidationError(fmt::format("{}:{}: unknown relation label '{}'", source_name,
                                          line_no, fields[1]));
      }
      RelationSpan span;
      span.label = fields[1];
      span.token_start = parse_index(fields[2], source_name, line_no, "token start");
      span.token_end = parse_index(fields[3], source_name, line_no, "token end");
      if (span.token_start > span.token_end) {
        throw ValidationError(fmt::format("{}:{}: span start {} exceeds end {}", source_name,
                                          line_no, span.token_start, span.token_end));
      }
      if (doc != nullptr && span.token_end >= doc->tokens.size()) {
        throw ValidationError(fmt::format("{}:{}: span end {} outside document '{}' ({} tokens)",
                                          source_name, line_no, span.token_end, doc->doc_id,
                                          doc->tokens.size()));
      }
      out.relation_spans.push_back(std::move(span));
    } else if (kind == "mod") {
      if (fields.size() != 3) {
        throw ParseError(source_name, line_no, "mod record needs 3 tab-separated fields");
      }
      ModifierLink link{normalize(fields[1]), normalize(fields[2])};
      if (link.head.empty() || link.dependent.empty()) {
        throw ParseError(source_name, line_no, "mod record has an empty term");
      }
      out.modifiers.push_back(std::move(link));
    } else {
      throw ParseError(source_name, line_no, fmt::format("unknown record type '{}'", kind));
    }
  }
  return out;
}

AnnotationSet load_annotations(const std::string& path, const Document* doc) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open annotation file '{}'", path));
  return parse_annotations(in, doc, path);
}

SynonymMap parse_synonyms(std::istream& in, const std::string& source_name) {
  SynonymMap out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw ParseError(source_name, line_no, "synonym record needs 2 tab-separated fields");
    }
    const std::string term = normalize(trim(fields[0]));
    if (term.empty()) throw ParseError(source_name, line_no, "empty term");
    auto& syns = out[term];
    std::size_t start = 0;
    while (start <= fields[1].size()) {
      auto comma = fields[1].find(',', start);
      if (comma == std::string::npos) comma = fields[1].size();
      std::string syn = normalize(trim(std::string_view(fields[1]).substr(start, comma - start)));
      if (!syn.empty()) syns.push_back(std::move(syn));
      start = comma + 1;
    }
  }
  return out;
}

SynonymMap load_synonyms(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open synonym file '{}'", path));
  return parse_synonyms(in, path);
}

}  // namespace catenae::text
