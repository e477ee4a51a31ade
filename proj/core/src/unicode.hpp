#pragma once

// Minimal UTF-8 handling for tokenization. Case mapping covers Latin-1,
// Latin Extended-A, Greek and Cyrillic; everything else passes through.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace catenae::unicode {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first code unit
  std::size_t length;  // number of code units
};

/// Decodes the whole string; throws DecodeError at the first invalid sequence.
std::vector<CodePoint> decode(std::string_view text);

void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_punctuation(char32_t cp);
bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);

}  // namespace catenae::unicode
