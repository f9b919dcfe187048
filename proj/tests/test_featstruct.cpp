#include <gtest/gtest.h>

#include "cvote/featstruct.hpp"
#include "cvote/ruleset.hpp"
#include "generators.hpp"

using namespace cvote;

namespace {

Constraint constraint(const std::string& text) {
  return load_rules("[" + text + "]", WeightConfig{}).rules.front().constraints.front();
}

const char* kEvGen = "[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=GEN]]";
const char* kUygulamaNoun = "[[CAT=NOUN][ROOT=uygulama][AGR=3SG][POSS=NONE][CASE=NOM]]";
const char* kUygulaInfinitive =
    "[[CAT=VERB][ROOT=uygula][SENSE=POS][CONV=NOUN=MA][TYPE=INFINITIVE]"
    "[AGR=3SG][POSS=NONE][CASE=NOM]]";

}  // namespace

TEST(ParseFeatureStructure, FlatAnalyzerOutput) {
  Parse p = parse_feature_structure(kEvGen);
  EXPECT_EQ(p.structure().size(), 5u);
  EXPECT_EQ(p.text(), "[[cat=noun][root=ev][agr=3sg][poss=none][case=gen]]");
  EXPECT_EQ(p.root(), "ev");
  EXPECT_EQ(p.structure().stem(), nullptr);
}

TEST(ParseFeatureStructure, ConversionBecomesNestedStem) {
  Parse p = parse_feature_structure(
      "[[CAT=ADJ][ROOT=koyu][CONV=NOUN=NONE][AGR=3SG][POSS=2SG][CASE=NOM]]");
  EXPECT_EQ(p.text(),
            "[[cat=noun][suffix=none][stem=[[cat=adj][root=koyu]]][agr=3sg][poss=2sg][case=nom]]");
  ASSERT_NE(p.structure().stem(), nullptr);
  EXPECT_EQ(p.structure().depth(), 1u);
  EXPECT_EQ(p.root(), "koyu");
}

TEST(ParseFeatureStructure, RepeatedConversionNestsLeftToRight) {
  Parse p = parse_feature_structure(
      "[[CAT=VERB][ROOT=yap][CONV=NOUN=MA][CONV=ADJ=LI][CASE=NOM]]");
  EXPECT_EQ(p.text(),
            "[[cat=adj][suffix=li][stem=[[cat=noun][suffix=ma][stem=[[cat=verb][root=yap]]]]]"
            "[case=nom]]");
  EXPECT_EQ(p.structure().depth(), 2u);
}

TEST(ParseFeatureStructure, WhitespaceBetweenItemsIsIgnored) {
  Parse p = parse_feature_structure("[[CAT=NOUN][ROOT=taS]\n    [AGR=3SG][POSS=NONE][CASE=NOM]]");
  EXPECT_EQ(p.text(), "[[cat=noun][root=tas][agr=3sg][poss=none][case=nom]]");
}

TEST(ParseFeatureStructure, Errors) {
  try {
    parse_feature_structure("[[CAT=NOUN]");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unbalanced"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 12u);
  }
  EXPECT_THROW(parse_feature_structure("[[CAT=NOUN][CAT=VERB]]"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[=NOUN]]"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[CAT=]]"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[CAT=NOUN]] x"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[STEM=NO]]"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[AGR=[[CAT=NOUN]]]]"), ParseError);
  EXPECT_THROW(parse_feature_structure("[[CONV=NOUN=MA]]"), ParseError);

  try {
    parse_feature_structure("[[CAT=NOUN]\n[CAT=ADJ]]");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(ParseFeatureStructure, FeatureNamesAreUniqueAfterConversion) {
  // AGR appears once per derivation layer, which is legal.
  Parse p = parse_feature_structure("[[CAT=NOUN][AGR=3SG][CONV=VERB=LA][AGR=2SG]]");
  EXPECT_EQ(p.text(), "[[cat=verb][suffix=la][stem=[[cat=noun][agr=3sg]]][agr=2sg]]");
}

TEST(Subsumes, EmptyConstraintMatchesEverything) {
  EXPECT_TRUE(subsumes(Constraint{}, parse_feature_structure(kEvGen)));
  EXPECT_TRUE(subsumes(Constraint{}, parse_feature_structure(kUygulaInfinitive)));
}

TEST(Subsumes, AblativeCase) {
  Parse p = parse_feature_structure("[[cat=noun][root=ev][agr=3sg][poss=none][case=abl]]");
  EXPECT_TRUE(subsumes(constraint("[case:abl]"), p));
  EXPECT_FALSE(subsumes(constraint("[case:gen]"), p));
}

TEST(Subsumes, UnderivedNoun) {
  Constraint c = constraint("[cat:noun,stem:no]");
  EXPECT_TRUE(subsumes(c, parse_feature_structure(kUygulamaNoun)));
  EXPECT_FALSE(subsumes(c, parse_feature_structure(kUygulaInfinitive)));
}

TEST(Subsumes, MissingFeatureFails) {
  Parse p = parse_feature_structure("[[cat=pron][root=sen][case=gen]]");
  EXPECT_FALSE(subsumes(constraint("[agr:2sg,case:gen]"), p));
}

TEST(Subsumes, NestedStemConstraint) {
  Parse participle = parse_feature_structure(
      "[[CAT=VERB][ROOT=gel][SENSE=POS][TAM1=NARR][CONV=ADJ=MIS]]");
  EXPECT_TRUE(subsumes(constraint("[cat:adj,stem:[tam1:narr]]"), participle));
  EXPECT_FALSE(subsumes(constraint("[cat:adj,stem:[tam1:past]]"), participle));
  EXPECT_FALSE(subsumes(constraint("[cat:adj,stem:[tam1:narr]]"), parse_feature_structure(kEvGen)));
  EXPECT_TRUE(subsumes(constraint("[cat:adj,suffix:mis,stem:[cat:verb]]"), participle));
}

TEST(Constraint, Wellformedness) {
  using Ptr = std::shared_ptr<const FeatureStructure>;
  EXPECT_THROW(Constraint::from_structure(FeatureStructure({{"case", NoStem{}}})),
               MalformedStructure);
  EXPECT_THROW(Constraint::from_structure(
                   FeatureStructure({{"agr", Ptr(new FeatureStructure({Feature{"cat", std::string("n")}}))}})),
               MalformedStructure);
  EXPECT_THROW(Constraint::from_structure(FeatureStructure({{"stem", Ptr(new FeatureStructure)}})),
               MalformedStructure);
  EXPECT_THROW(FeatureStructure({{"cat", "noun"}, {"cat", "verb"}}), MalformedStructure);
  EXPECT_EQ(constraint("[cat:noun,stem:[cat:v]]").to_string(), "[cat:noun,stem:[cat:v]]");
}

// Property: a constraint with only atomic pairs reinterpreted as a parse is
// subsumed by itself; so is any constraint lifted straight from a parse.
TEST(SubsumesProperty, ReflexiveOnGroundConstraints) {
  prop::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Parse p = prop::random_parse(rng);
    Constraint c = Constraint::from_structure(p.structure());
    EXPECT_TRUE(subsumes(c, p)) << p.text();
    Parse back = Parse::from_structure(c.structure());
    EXPECT_TRUE(subsumes(c, back));
  }
}

TEST(SubsumesProperty, ConstraintsFromParsePairsMatchTheParse) {
  prop::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Parse p = prop::random_parse(rng);
    Constraint c = Constraint::from_structure(prop::constraint_from(rng, p.structure()));
    EXPECT_TRUE(subsumes(c, p)) << c.to_string() << " vs " << p.text();
  }
}

TEST(ParseProperty, HashFollowsEquality) {
  prop::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Parse p = prop::random_parse(rng);
    Parse q = parse_feature_structure(p.text());
    EXPECT_EQ(p, q);
    EXPECT_EQ(std::hash<Parse>{}(p), std::hash<Parse>{}(q));
  }
}
