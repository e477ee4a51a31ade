#include <gtest/gtest.h>

#include <random>

#include "catenae/error.hpp"
#include "catenae/text.hpp"

using namespace catenae;
using namespace catenae::text;

namespace {

std::vector<std::string> normalized(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.normalized);
  return out;
}

}  // namespace

TEST(Normalize, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(normalize("Hello,"), "hello");
  EXPECT_EQ(normalize("\"Quoted\""), "quoted");
  EXPECT_EQ(normalize("(x)"), "x");
  EXPECT_EQ(normalize("e.g."), "e.g");
  EXPECT_EQ(normalize("..."), "");
  EXPECT_EQ(normalize("ÉCOLE"), "école");
  EXPECT_EQ(normalize("«Straße»"), "straße");
}

TEST(Tokenize, DropsPunctuationOnlyTokens) {
  const auto tokens = tokenize("The cat -- sat.");
  EXPECT_EQ(normalized(tokens), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_EQ(tokens[2].surface, "sat.");
  EXPECT_EQ(tokens[2].byte_offset, 11u);
}

TEST(Tokenize, StopwordsRemovedKeepPositions) {
  TokenizeConfig config;
  config.remove_stopwords = true;
  config.stopwords = {"the"};
  const auto tokens = tokenize("the cat the dog", config);
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].position, 1u);
  EXPECT_EQ(tokens[1].position, 3u);
}

TEST(Tokenize, InvalidUtf8ReportsOffset) {
  const std::string bad = std::string("ok ") + "\xC3\x28";
  try {
    tokenize(bad);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 3u);
  }
  EXPECT_THROW(tokenize("\xED\xA0\x80"), DecodeError);  // surrogate
  EXPECT_THROW(tokenize("\xC0\xAF"), DecodeError);      // overlong
}

TEST(Segment, SplitsOnTerminalPunctuationBeforeUppercase) {
  const auto doc = make_document("d", "The cat sat. A dog ran! Why? no split here.", {}, {});
  ASSERT_EQ(doc.sentence_count(), 3u);
  EXPECT_EQ(doc.sentences[0], (SentenceRange{0, 3}));
  EXPECT_EQ(doc.sentences[1], (SentenceRange{3, 6}));
  EXPECT_EQ(doc.sentences[2], (SentenceRange{6, 10}));
  EXPECT_EQ(doc.tokens[4].sentence_index, 1u);
}

TEST(Segment, AbbreviationsDoNotSplit) {
  SegmentConfig config{default_abbreviations()};
  const auto doc = make_document("d", "Mr. Smith met Dr. Jones. They talked.", {}, config);
  EXPECT_EQ(doc.sentence_count(), 2u);
  const auto plain = make_document("d", "Mr. Smith met Dr. Jones. They talked.", {}, {});
  EXPECT_EQ(plain.sentence_count(), 4u);
}

TEST(Segment, ClosingQuotesAndEmptyText) {
  const auto doc = make_document("d", "He said \"stop.\" Then left.", {}, {});
  EXPECT_EQ(doc.sentence_count(), 2u);
  const auto empty = make_document("e", "", {}, {});
  EXPECT_EQ(empty.sentence_count(), 1u);
  EXPECT_TRUE(empty.tokens.empty());
}

TEST(Segment, FilteredSentenceKeepsEmptyRange) {
  TokenizeConfig config;
  config.remove_stopwords = true;
  config.stopwords = {"the", "a"};
  const auto doc = make_document("d", "The cat sat. The a. Dogs bark.", config, {});
  ASSERT_EQ(doc.sentence_count(), 3u);
  EXPECT_EQ(doc.sentences[1].size(), 0u);
  EXPECT_EQ(doc.tokens.back().sentence_index, 2u);
}

TEST(Windows, HandExamples) {
  const auto abc = make_document("d", "a b c", {}, {});
  EXPECT_EQ(extract_windows(abc, 2), (std::vector<TermPair>{{"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(extract_windows(abc, 3), (std::vector<TermPair>{{"a", "b"}, {"a", "c"}, {"b", "c"}}));
  EXPECT_TRUE(extract_windows(make_document("d", "a", {}, {}), 5).empty());
  EXPECT_THROW(extract_windows(abc, 1), ParameterError);
}

TEST(Windows, DoNotCrossSentences) {
  const auto doc = make_document("d", "a b. C d.", {}, {});
  EXPECT_EQ(extract_windows(doc, 4), (std::vector<TermPair>{{"a", "b"}, {"c", "d"}}));
}

TEST(Windows, PairCountMatchesClosedForm) {
  std::mt19937 rng(7);
  const std::vector<std::string> words = {"alpha", "Beta", "gamma", "Delta"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string raw;
    const int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      raw += (rng() % 5 == 0 ? "Stop. " : "") + words[rng() % words.size()] + " ";
    }
    const auto doc = make_document("d", raw, {}, {});
    const std::size_t w = 2 + rng() % 6;
    std::size_t expected = 0;
    for (const auto& s : doc.sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) expected += std::min(w - 1, s.size() - 1 - i);
    }
    EXPECT_EQ(extract_windows(doc, w).size(), expected);
  }
}

TEST(WordLists, ParseAndDefaults) {
  const auto set = parse_word_list("# comment\nThe\n  of \n\nand\n");
  EXPECT_EQ(set, (WordSet{"the", "of", "and"}));
  EXPECT_TRUE(default_stopwords().contains("the"));
  EXPECT_FALSE(default_stopwords().contains("whale"));
  EXPECT_TRUE(default_abbreviations().contains("mr."));
  EXPECT_EQ(parse_raw_word_list("E.g.\n"), (WordSet{"e.g."}));
}

TEST(Terms, ExcludeSet) {
  const auto doc = make_document("d", "the whale and the sea", {}, {});
  const WordSet stop{"the", "and"};
  EXPECT_EQ(terms_of(doc, &stop), (std::vector<std::string>{"whale", "sea"}));
  EXPECT_EQ(terms_of(doc).size(), 5u);
}
