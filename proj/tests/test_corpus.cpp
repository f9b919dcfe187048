#include <gtest/gtest.h>

#include "cvote/corpus.hpp"
#include "generators.hpp"

using namespace cvote;

TEST(ReadCorpus, SentencesAndTokens) {
  const char* text =
      "taS\t[[CAT=ADJ][ROOT=taS]]\t[[CAT=NOUN][ROOT=taS][AGR=3SG][POSS=NONE][CASE=NOM]]\n"
      "gel\t[[CAT=VERB][ROOT=gel]]\n"
      "\n"
      "\n"
      "f10\n"
      "ev\t[[CAT=NOUN][ROOT=ev]]\r\n";
  Corpus c = read_corpus(text);
  ASSERT_EQ(c.size(), 2u);
  ASSERT_EQ(c[0].size(), 2u);
  EXPECT_EQ(c[0].tokens[0].surface, "taS");
  EXPECT_EQ(c[0].tokens[0].readings.size(), 2u);
  EXPECT_EQ(c[0].tokens[0].readings[1].parse.text(),
            "[[cat=noun][root=tas][agr=3sg][poss=none][case=nom]]");
  EXPECT_TRUE(c[1].tokens[0].readings.empty());
  EXPECT_EQ(c[1].tokens[1].readings.size(), 1u);
}

TEST(ReadCorpus, ErrorLocation) {
  try {
    read_corpus("ev\t[[CAT=NOUN]]\nevin\t[[CAT=NOUN]]\t[[CAT=NOUN][CASE=GEN]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 40u);  // end of the second parse field
  }
  EXPECT_THROW(read_corpus("\t[[CAT=NOUN]]\n"), ParseError);
}

TEST(CorpusProperty, WriteThenReadIsIdentity) {
  prop::Rng rng(61);
  Corpus c;
  for (int s = 0; s < 30; ++s) c.push_back(prop::random_sentence(rng));
  const std::string written = write_corpus(c);
  Corpus back = read_corpus(written);
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    ASSERT_EQ(back[s].size(), c[s].size());
    for (std::size_t t = 0; t < c[s].size(); ++t) {
      ASSERT_EQ(back[s].tokens[t].readings.size(), c[s].tokens[t].readings.size());
      for (std::size_t p = 0; p < c[s].tokens[t].readings.size(); ++p)
        EXPECT_EQ(back[s].tokens[t].readings[p].parse, c[s].tokens[t].readings[p].parse);
    }
  }
  EXPECT_EQ(write_corpus(back), written);
}
