#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace catenae::text {

using WordSet = std::unordered_set<std::string>;

struct Token {
  std::string surface;
  std::string normalized;
  // Index in the token stream before stopword filtering. Filtering leaves
  // gaps here; the index into Document::tokens is the contiguous view.
  std::size_t position = 0;
  std::size_t sentence_index = 0;
  std::size_t byte_offset = 0;
  std::size_t byte_length = 0;
};

/// Half-open range [begin, end) into Document::tokens.
struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const SentenceRange&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<SentenceRange> sentences;
  std::vector<Token> tokens;

  std::size_t sentence_count() const { return sentences.size(); }
};

struct TokenizeConfig {
  bool remove_stopwords = false;
  WordSet stopwords;
  // Optional stemmer applied after normalization; no stemming when empty.
  std::function<std::string(std::string_view)> stemmer;
};

struct SegmentConfig {
  WordSet abbreviations;  // lowercased, with trailing period ("mr.")
};

/// Lowercases and strips leading/trailing Unicode punctuation. May return
/// an empty string for tokens made only of punctuation.
std::string normalize(std::string_view surface);

/// Whitespace tokenization followed by normalization. Tokens that normalize
/// to the empty string are dropped. Throws DecodeError on invalid UTF-8.
std::vector<Token> tokenize(std::string_view raw_text, const TokenizeConfig& config = {});

/// Splits raw_text after '.', '!' or '?' when followed by whitespace and an
/// uppercase letter, or by end of text. Assigns Token::sentence_index in
/// place and returns ranges partitioning `tokens`. Always yields at least one
/// sentence; sentences whose tokens were all filtered keep an empty range so
/// sentence indices stay aligned with the text.
std::vector<SentenceRange> segment_sentences(std::vector<Token>& tokens,
                                             std::string_view raw_text,
                                             const SegmentConfig& config = {});

Document make_document(std::string doc_id, std::string_view raw_text,
                       const TokenizeConfig& tokenize_config = {},
                       const SegmentConfig& segment_config = {});

using TermPair = std::pair<std::string, std::string>;

/// Ordered pairs (t, t') with t' strictly within window_size - 1 tokens
/// after t, never crossing a sentence boundary. Throws ParameterError when
/// window_size < 2.
std::vector<TermPair> extract_windows(const Document& doc, std::size_t window_size);

/// Parses a newline-separated word list; '#' starts a comment line. Entries
/// are normalized.
WordSet parse_word_list(std::string_view text);
/// Like parse_word_list but keeps entries as lowercased raw tokens (used for
/// abbreviations, whose trailing period matters).
WordSet parse_raw_word_list(std::string_view text);

WordSet load_word_list(const std::string& path);

std::string_view default_stopword_text();
std::string_view default_abbreviation_text();
const WordSet& default_stopwords();
const WordSet& default_abbreviations();

/// Normalized terms in document order, skipping any found in `exclude`.
std::vector<std::string> terms_of(const Document& doc, const WordSet* exclude = nullptr);

}  // namespace catenae::text
