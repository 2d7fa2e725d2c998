#include "ctd/prompt.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ctd/io.hpp"
#include "fixtures.hpp"

namespace ctd {
namespace {

TEST(RenderPrompt, MatchesGoldenFile) {
  const auto golden = io::read_file(std::string(CTD_TEST_DATA_DIR) + "/covid_cq_prompt.golden.txt");
  const auto prompt = render_prompt(testing::covid_cq_triplet(), "HCQ cured my friend", "p1");
  EXPECT_EQ(prompt.text, golden);
  EXPECT_EQ(prompt.claim_id, "covid-cq-hcq");
  EXPECT_EQ(prompt.post_id, "p1");
}

TEST(RenderPrompt, RefutingExemplarPrecedesSupporting) {
  const auto t = testing::covid_cq_triplet();
  const auto text = render_prompt(t, "test").text;
  const auto refuting = text.find(t.refuting_evidence);
  const auto supporting = text.find(t.supporting_evidence);
  ASSERT_NE(refuting, std::string::npos);
  ASSERT_NE(supporting, std::string::npos);
  EXPECT_LT(refuting, supporting);
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(RenderPrompt, ConcatenatesWithoutNormalizing) {
  const Triplet t{"c", "consensus without period", "refuting without period",
                  "supporting without period"};
  const std::string expected =
      "Classify if a statement supports or refutes the consensus statement: consensus without "
      "period\n\nStatement: refuting without period\nResponse: Refutes.\n\nStatement: "
      "supporting without period\nResponse: Supports.\n\nStatement: test  Text\nResponse:";
  EXPECT_EQ(render_prompt(t, "test  Text").text, expected);
}

TEST(RenderPrompt, Deterministic) {
  const auto t = testing::wisconsin_triplet();
  EXPECT_EQ(render_prompt(t, "x").text, render_prompt(t, "x").text);
}

TEST(RenderPrompt, Errors) {
  EXPECT_THROW(render_prompt(testing::covid_cq_triplet(), ""), DataError);
  EXPECT_THROW(render_prompt(testing::covid_cq_triplet(), " \n"), DataError);
  auto bad = testing::covid_cq_triplet();
  bad.supporting_evidence = bad.refuting_evidence;
  EXPECT_THROW(render_prompt(bad, "text"), DataError);
}

TEST(RenderPrompt, InjectiveInTestTextAndParsesBack) {
  const auto t = testing::michigan_triplet();
  std::mt19937_64 rng(5);
  const std::string alphabet = "ab .\n:Statement";
  std::set<std::string> texts, prompts;
  for (int i = 0; i < 500; ++i) {
    std::string text = "t";
    for (std::size_t k = 0, n = rng() % 12; k < n; ++k) text += alphabet[rng() % alphabet.size()];
    texts.insert(text);
    const auto prompt = render_prompt(t, text).text;
    prompts.insert(prompt);
    const auto parsed = parse_prompt(prompt);
    ASSERT_TRUE(parsed.has_value()) << prompt;
    EXPECT_EQ(parsed->test_text, text);
    EXPECT_EQ(parsed->consensus, t.consensus);
    EXPECT_EQ(parsed->refuting_evidence, t.refuting_evidence);
    EXPECT_EQ(parsed->supporting_evidence, t.supporting_evidence);
  }
  EXPECT_EQ(texts.size(), prompts.size());
}

TEST(ParsePrompt, RejectsForeignText) {
  EXPECT_FALSE(parse_prompt("Classify this").has_value());
  auto text = render_prompt(testing::covid_cq_triplet(), "x").text;
  EXPECT_FALSE(parse_prompt(text + "\n").has_value());
  text.replace(text.find("Response: Supports."), 19, "Response: Refutes.!");
  EXPECT_FALSE(parse_prompt(text).has_value());
}

TEST(ParseResponse, TemplateTargets) {
  EXPECT_EQ(parse_response("Supports."), Prediction::kSupportsConsensus);
  EXPECT_EQ(parse_response("Refutes."), Prediction::kRefutesConsensus);
  EXPECT_EQ(parse_response(kSupportsTarget), Prediction::kSupportsConsensus);
  EXPECT_EQ(parse_response(kRefutesTarget), Prediction::kRefutesConsensus);
  EXPECT_EQ(target_for(StanceLabel::kRefutesConsensus), "Refutes.");
  EXPECT_EQ(target_for(StanceLabel::kSupportsConsensus), "Supports.");
}

TEST(ParseResponse, CaseWhitespacePunctuation) {
  EXPECT_EQ(parse_response("  refutes"), Prediction::kRefutesConsensus);
  EXPECT_EQ(parse_response("SUPPORT"), Prediction::kSupportsConsensus);
  EXPECT_EQ(parse_response("\nRefute!\n"), Prediction::kRefutesConsensus);
  EXPECT_EQ(parse_response("supports, because the study..."), Prediction::kSupportsConsensus);
}

TEST(ParseResponse, FirstTokenOnly) {
  EXPECT_EQ(parse_response("The statement is unrelated"), Prediction::kAbstain);
  EXPECT_EQ(parse_response("It refutes nothing, it supports"), Prediction::kAbstain);
  EXPECT_EQ(parse_response("Supportive"), Prediction::kAbstain);
  EXPECT_EQ(parse_response(""), Prediction::kAbstain);
  EXPECT_EQ(parse_response("???"), Prediction::kAbstain);
}

}  // namespace
}  // namespace ctd
