#include <gtest/gtest.h>

#include <fstream>

#include "colscale/errors.hpp"
#include "colscale/lexicon.hpp"
#include "test_support.hpp"

using namespace col;

TEST(Lexicon, DefaultIsValid) { EXPECT_NO_THROW(LexiconConfig::german_ud().validate()); }

TEST(Lexicon, JsonRoundTrip) {
  const auto lex = LexiconConfig::german_ud();
  EXPECT_EQ(lexicon_from_json(lexicon_to_json(lex)), lex);
}

TEST(Lexicon, PartialJsonOverridesDefaults) {
  const auto lex = lexicon_from_json(R"({"comment": "x", "interjection_tags": ["UH"], "punct_tag": "PUNCT"})");
  EXPECT_EQ(lex.interjection_tags, TagSet{"UH"});
  EXPECT_EQ(lex.pronoun_tags, LexiconConfig::german_ud().pronoun_tags);
}

TEST(Lexicon, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(lexicon_from_json(R"({"interjection_tag": ["UH"]})"), ParseError);
  EXPECT_THROW(lexicon_from_json(R"({"interjection_tags": "UH"})"), ParseError);
  EXPECT_THROW(lexicon_from_json("{"), ParseError);
}

TEST(Lexicon, ValidateRejectsEmptySetAndPunctOverlap) {
  auto lex = LexiconConfig::german_ud();
  lex.noun_tags.clear();
  EXPECT_THROW(lex.validate(), ArgumentError);
  lex = LexiconConfig::german_ud();
  lex.content_pos_nonverb.insert("PUNCT");
  EXPECT_THROW(lex.validate(), ArgumentError);
}

TEST(Lexicon, MatchesCoarseOrFineTag) {
  Token t;
  t.pos = "PRON";
  t.xpos = "PPER";
  EXPECT_TRUE(matches(t, {"PPER"}));
  EXPECT_TRUE(matches(t, {"PRON"}));
  EXPECT_FALSE(matches(t, {"NOUN"}));
}

TEST(Lexicon, ShippedFileEqualsBuiltin) {
  EXPECT_EQ(load_lexicon(COL_DATA_DIR "/lexicon_de.json"), LexiconConfig::german_ud());
}
