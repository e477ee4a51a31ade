#include "catenae/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "catenae/error.hpp"
#include "unicode.hpp"

namespace catenae::text {

namespace {

using unicode::CodePoint;

// A maximal run of non-space code points, as indices into the decoded text.
struct Word {
  std::size_t first = 0;  // code point index
  std::size_t last = 0;   // one past the final code point
};

std::vector<Word> split_words(const std::vector<CodePoint>& cps) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && unicode::is_space(cps[i].value)) ++i;
    if (i == cps.size()) break;
    const std::size_t start = i;
    while (i < cps.size() && !unicode::is_space(cps[i].value)) ++i;
    words.push_back({start, i});
  }
  return words;
}

std::string normalize_range(const std::vector<CodePoint>& cps, std::size_t first,
                            std::size_t last) {
  while (first < last && unicode::is_punctuation(cps[first].value)) ++first;
  while (last > first && unicode::is_punctuation(cps[last - 1].value)) --last;
  std::string out;
  out.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    unicode::append_utf8(out, unicode::to_lower(cps[i].value));
  }
  return out;
}

std::string_view slice(std::string_view text, const std::vector<CodePoint>& cps,
                       const Word& w) {
  const std::size_t begin = cps[w.first].offset;
  const std::size_t end = cps[w.last - 1].offset + cps[w.last - 1].length;
  return text.substr(begin, end - begin);
}

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case 0x2019: case 0x201D: case 0xBB: case 0x203A:
      return true;
    default:
      return false;
  }
}

bool is_terminal(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

WordSet parse_lines(std::string_view text, bool normalized) {
  WordSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string entry = line.substr(b, e - b + 1);
    if (normalized) {
      std::string n = normalize(entry);
      if (!n.empty()) out.insert(std::move(n));
    } else {
      auto cps = unicode::decode(entry);
      std::string lowered;
      for (const auto& cp : cps) unicode::append_utf8(lowered, unicode::to_lower(cp.value));
      out.insert(std::move(lowered));
    }
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view surface) {
  const auto cps = unicode::decode(surface);
  return normalize_range(cps, 0, cps.size());
}

std::vector<Token> tokenize(std::string_view raw_text, const TokenizeConfig& config) {
  const auto cps = unicode::decode(raw_text);
  std::vector<Token> tokens;
  std::size_t position = 0;
  for (const Word& w : split_words(cps)) {
    std::string normalized = normalize_range(cps, w.first, w.last);
    if (normalized.empty()) continue;
    if (config.stemmer) {
      normalized = config.stemmer(normalized);
      if (normalized.empty()) continue;
    }
    const std::size_t this_position = position++;
    if (config.remove_stopwords && config.stopwords.contains(normalized)) continue;
    const std::string_view surface = slice(raw_text, cps, w);
    Token t;
    t.surface = std::string(surface);
    t.normalized = std::move(normalized);
    t.position = this_position;
    t.byte_offset = cps[w.first].offset;
    t.byte_length = surface.size();
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<SentenceRange> segment_sentences(std::vector<Token>& tokens,
                                             std::string_view raw_text,
                                             const SegmentConfig& config) {
  const auto cps = unicode::decode(raw_text);
  const auto words = split_words(cps);

  // Byte offsets at which a new sentence starts.
  std::vector<std::size_t> starts;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words[wi];
    std::size_t last = w.last;
    while (last > w.first && is_closer(cps[last - 1].value)) --last;
    if (last == w.first || !is_terminal(cps[last - 1].value)) continue;
    if (cps[last - 1].value == U'.' && !config.abbreviations.empty()) {
      std::size_t first = w.first;
      while (first < last && unicode::is_punctuation(cps[first].value) &&
             cps[first].value != U'.') {
        ++first;
      }
      std::string lowered;
      for (std::size_t i = first; i < last; ++i) {
        unicode::append_utf8(lowered, unicode::to_lower(cps[i].value));
      }
      if (config.abbreviations.contains(lowered)) continue;
    }
    if (wi + 1 == words.size()) break;  // end of text closes the last sentence anyway
    const Word& next = words[wi + 1];
    std::size_t k = next.first;
    while (k < next.last && unicode::is_punctuation(cps[k].value)) ++k;
    if (k < next.last && unicode::is_upper(cps[k].value)) {
      starts.push_back(cps[next.first].offset);
    }
  }

  std::vector<SentenceRange> ranges(starts.size() + 1);
  std::size_t sentence = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (sentence < starts.size() && tokens[i].byte_offset >= starts[sentence]) {
      ranges[sentence].end = i;
      ++sentence;
      ranges[sentence].begin = i;
    }
    tokens[i].sentence_index = sentence;
  }
  while (sentence < starts.size()) {
    ranges[sentence].end = tokens.size();
    ++sentence;
    ranges[sentence].begin = tokens.size();
  }
  ranges.back().end = tokens.size();
  return ranges;
}

Document make_document(std::string doc_id, std::string_view raw_text,
                       const TokenizeConfig& tokenize_config,
                       const SegmentConfig& segment_config) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.tokens = tokenize(raw_text, tokenize_config);
  doc.sentences = segment_sentences(doc.tokens, raw_text, segment_config);
  return doc;
}

std::vector<TermPair> extract_windows(const Document& doc, std::size_t window_size) {
  if (window_size < 2) {
    throw ParameterError(fmt::format("window size must be at least 2, got {}", window_size));
  }
  std::vector<TermPair> pairs;
  for (const SentenceRange& s : doc.sentences) {
    for (std::size_t i = s.begin; i < s.end; ++i) {
      const std::size_t stop = std::min(s.end, i + window_size);
      for (std::size_t j = i + 1; j < stop; ++j) {
        pairs.emplace_back(doc.tokens[i].normalized, doc.tokens[j].normalized);
      }
    }
  }
  return pairs;
}

WordSet parse_word_list(std::string_view text) { return parse_lines(text, true); }

WordSet parse_raw_word_list(std::string_view text) { return parse_lines(text, false); }

WordSet load_word_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open word list '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_word_list(buf.str());
}

const WordSet& default_stopwords() {
  static const WordSet kSet = parse_word_list(default_stopword_text());
  return kSet;
}

const WordSet& default_abbreviations() {
  static const WordSet kSet = parse_raw_word_list(default_abbreviation_text());
  return kSet;
}

std::vector<std::string> terms_of(const Document& doc, const WordSet* exclude) {
  std::vector<std::string> out;
  out.reserve(doc.tokens.size());
  for (const Token& t : doc.tokens) {
    if (exclude != nullptr && exclude->contains(t.normalized)) continue;
    out.push_back(t.normalized);
  }
  return out;
}

}  // namespace catenae::text
