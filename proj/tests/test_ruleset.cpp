#include <gtest/gtest.h>

#include "cvote/ruleset.hpp"
#include "generators.hpp"

using namespace cvote;

namespace {

WeightConfig gen4() {
  WeightConfig w;
  w.value_weights["gen"] = 4;
  w.stem_scale = 2;
  return w;
}

Constraint constraint(const std::string& text) {
  return load_rules("[" + text + "]", WeightConfig{}).rules.front().constraints.front();
}

// Closed form: every leaf pair at nesting depth d weighs w * scale^d; a
// nested-stem pair contributes only through its leaves.
std::int64_t flattened_vote(const FeatureStructure& c, const WeightConfig& w, std::int64_t factor) {
  std::int64_t total = 0;
  for (const Feature& f : c.features()) {
    if (const auto* nested = std::get_if<StructurePtr>(&f.value)) {
      total += flattened_vote(**nested, w, factor * w.stem_scale);
      continue;
    }
    std::int64_t weight = 1;
    const auto* atom = std::get_if<std::string>(&f.value);
    if (atom && w.value_weights.count(*atom))
      weight = w.value_weights.find(*atom)->second;
    else if (w.feature_weights.count(f.name))
      weight = w.feature_weights.find(f.name)->second;
    total += factor * weight;
  }
  return total;
}

std::size_t leaf_pairs(const FeatureStructure& c, std::int64_t scale, std::int64_t factor = 1) {
  std::size_t total = 0;
  for (const Feature& f : c.features()) {
    if (const auto* nested = std::get_if<StructurePtr>(&f.value))
      total += leaf_pairs(**nested, scale, factor * scale);
    else
      total += static_cast<std::size_t>(factor);
  }
  return total;
}

}  // namespace

TEST(ConstraintVote, WorkedExampleIsThirteen) {
  Constraint c = constraint("[cat:noun, case:gen, stem:[cat:adj, stem:[cat:v], suffix=mis]]");
  EXPECT_EQ(constraint_vote(c, gen4()), 13);
  EXPECT_EQ(flattened_vote(c.structure(), gen4(), 1), 13);
}

TEST(ConstraintVote, SimpleCases) {
  EXPECT_EQ(constraint_vote(constraint("[cat:noun]"), WeightConfig{}), 1);
  EXPECT_EQ(constraint_vote(constraint("[case:gen, agr:3sg]"), gen4()), 5);
  EXPECT_EQ(constraint_vote(Constraint{}, gen4()), 0);
}

TEST(ConstraintVote, FactorPrecedence) {
  WeightConfig w = gen4();
  w.feature_weights["case"] = 3;
  w.feature_weights["stem"] = 5;
  // distinguished value beats distinguished feature
  EXPECT_EQ(constraint_vote(constraint("[case:gen]"), w), 4);
  EXPECT_EQ(constraint_vote(constraint("[case:abl]"), w), 3);
  // stem:no is an ordinary pair; a nested stem always recurses
  EXPECT_EQ(constraint_vote(constraint("[stem:no]"), w), 5);
  EXPECT_EQ(constraint_vote(constraint("[stem:[cat:v]]"), w), 2);
  EXPECT_EQ(constraint_vote(constraint("[stem:no]"), gen4()), 1);
}

TEST(RuleVote, SumsConstraintVotes) {
  auto set = load_rules("[[case:abl],[cat:postp,subcat:abl]]", WeightConfig::defaults());
  EXPECT_EQ(rule_vote(set.rules.front(), WeightConfig::defaults()), Vote(3));

  set = load_rules("[[agr:'2SG',case:gen],[cat:noun,poss:'2SG']]", gen4());
  EXPECT_EQ(set.rules.front().vote, Vote(7));
}

TEST(RuleVote, ManualOverride) {
  auto set = load_rules("[[cat:verb,tam1:imp]] ; VOTE=-10", gen4());
  ASSERT_EQ(set.rules.size(), 1u);
  const ConstraintRule& r = set.rules.front();
  EXPECT_EQ(r.vote_source, VoteSource::manual);
  EXPECT_EQ(r.vote, Vote(-10));
  EXPECT_EQ(rule_vote(r, gen4()), Vote(-10));
}

TEST(LoadRules, FileFormat) {
  const char* text =
      "# preference and context rules\n"
      "[[case:abl],[cat:postp,subcat:abl]]\n"
      "\n"
      "[[cat:adj,stem:[tam1:narr]],[cat:noun,stem:no]]   # participle\n"
      "[[cat:verb,tam1:imp]] ; vote = -10\n";
  RuleSet set = load_rules(text, gen4(), "demo.rules");
  ASSERT_EQ(set.rules.size(), 3u);
  EXPECT_TRUE(set.warnings.empty());
  EXPECT_EQ(set.rules[0].id, "demo.rules:2");
  EXPECT_EQ(set.rules[0].size(), 2u);
  EXPECT_EQ(set.rules[1].id, "demo.rules:4");
  EXPECT_EQ(set.rules[1].vote, Vote(3 + 2));
  EXPECT_EQ(set.rules[1].constraints[0].to_string(), "[cat:adj,stem:[tam1:narr]]");
  EXPECT_EQ(set.rules[2].vote, Vote(-10));
}

TEST(LoadRules, EmptyFileWarns) {
  RuleSet set = load_rules("", gen4());
  EXPECT_TRUE(set.rules.empty());
  ASSERT_EQ(set.warnings.size(), 1u);
}

TEST(LoadRules, DuplicatesAndLongRulesWarn) {
  RuleSet set = load_rules(
      "[[case:gen]]\n[[CASE:GEN]]\n[[cat:a],[cat:b],[cat:c],[cat:d],[cat:e],[cat:f]]\n", gen4());
  ASSERT_EQ(set.rules.size(), 3u);
  ASSERT_EQ(set.warnings.size(), 2u);
  EXPECT_NE(set.warnings[0].find("duplicate of rules:1"), std::string::npos);
  EXPECT_NE(set.warnings[1].find("6 tokens"), std::string::npos);
}

TEST(LoadRules, Errors) {
  auto throws_at = [](const std::string& text, std::size_t line) {
    try {
      load_rules(text, WeightConfig::defaults());
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      return;
    }
    ADD_FAILURE() << "no error for: " << text;
  };
  throws_at("[]", 1);
  throws_at("\n[[case:gen]", 2);
  throws_at("[[case:gen]] ; VOTE=1.5", 1);
  throws_at("[[case:gen]] ; VOTE=abc", 1);
  throws_at("[[case:gen]] ; WEIGHT=3", 1);
  throws_at("[[case:no]]", 1);
  throws_at("[[case:gen,case:abl]]", 1);
  throws_at("[[stem:no,stem:[cat:v]]]", 1);
  throws_at("[[stem:[]]]", 1);
  throws_at("[[stem:verb]]", 1);
  throws_at("[[]]", 1);
  EXPECT_NO_THROW(load_rules("[[]] ; VOTE=-2", gen4()));
}

TEST(LoadWeights, Format) {
  WeightConfig w = load_weights("# distinguished\nvalue gen 4\nfeature CASE 3\nstem_scale 3\n");
  EXPECT_EQ(w.value_weights.at("gen"), 4);
  EXPECT_EQ(w.feature_weights.at("case"), 3);
  EXPECT_EQ(w.stem_scale, 3);
  EXPECT_THROW(load_weights("value gen 1\n"), ParseError);
  EXPECT_THROW(load_weights("stem_scale 0\n"), ParseError);
  EXPECT_THROW(load_weights("value gen\n"), ParseError);
  EXPECT_THROW(load_weights("colour gen 3\n"), ParseError);
  EXPECT_THROW(load_weights("value gen 2.5\n"), ParseError);
}

TEST(ConstraintVoteProperty, MatchesFlattenedForm) {
  prop::Rng rng(21);
  WeightConfig w = gen4();
  w.feature_weights["subcat"] = 3;
  w.value_weights["narr"] = 2;
  for (std::int64_t scale : {1, 2, 3}) {
    w.stem_scale = scale;
    for (int i = 0; i < 300; ++i) {
      FeatureStructure c = prop::random_constraint_structure(rng, 3);
      EXPECT_EQ(constraint_vote(c, w), flattened_vote(c, w, 1));
    }
  }
}

TEST(ConstraintVoteProperty, MonotoneAndBoundedBelow) {
  prop::Rng rng(22);
  WeightConfig w = gen4();
  w.feature_weights["tam1"] = 2;
  for (int i = 0; i < 500; ++i) {
    FeatureStructure c = prop::random_constraint_structure(rng, 2);
    std::int64_t before = constraint_vote(c, w);
    EXPECT_GE(before, static_cast<std::int64_t>(c.size()));
    // add a pair not yet present
    for (const auto& [name, values] : prop::inventory().features) {
      if (c.find(name) != nullptr) continue;
      FeatureStructure bigger = c;
      bigger.add({name, values.front()});
      EXPECT_GE(constraint_vote(bigger, w), before + 1);
      break;
    }
    if (!c.empty()) {
      FeatureStructure wrapped({{"stem", std::make_shared<const FeatureStructure>(c)}});
      EXPECT_EQ(constraint_vote(wrapped, w), w.stem_scale * before);
    }
  }
}

TEST(ConstraintVoteProperty, DefaultWeightsCountPairs) {
  prop::Rng rng(23);
  WeightConfig w;  // no distinguished weights
  for (int i = 0; i < 300; ++i) {
    ConstraintRule r;
    std::size_t expected = 0;
    for (int k = 0; k < 3; ++k) {
      Constraint c = prop::random_constraint(rng, 2);
      expected += leaf_pairs(c.structure(), w.stem_scale);
      r.constraints.push_back(c);
    }
    EXPECT_EQ(rule_vote(r, w), Vote(static_cast<std::int64_t>(expected)));
  }
}
