#include "ctd/augment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"

namespace ctd {
namespace {

using testing::brute_force_examples;
using testing::synthetic_corpus;

std::vector<TrainingExample> sorted(std::vector<TrainingExample> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(CountExamples, ReferenceClaimCount) {
  // 13 supporting and 22 refuting perspectives.
  EXPECT_EQ(count_examples(13, 22), 9438u);
}

TEST(CountExamples, Degenerate) {
  EXPECT_EQ(count_examples(1, 1), 0u);
  EXPECT_EQ(count_examples(0, 5), 0u);
  EXPECT_EQ(count_examples(5, 0), 0u);
  EXPECT_EQ(count_examples(0, 0), 0u);
}

TEST(CountExamples, TwoByTwoMatchesBruteForce) {
  const auto corpus = synthetic_corpus("c", 2, 2);
  EXPECT_EQ(brute_force_examples(corpus).size(), 8u);
  EXPECT_EQ(count_examples(2, 2), 8u);
}

TEST(EnumerateExamples, TwoByTwoLabels) {
  PerspectiveCorpus corpus{{"c", "consensus", std::nullopt}, {"s1", "s2"}, {"r1", "r2"}};
  const auto examples = enumerate_examples(corpus);
  ASSERT_EQ(examples.size(), 8u);
  const auto it = std::find_if(examples.begin(), examples.end(), [](const TrainingExample& e) {
    return e.refuting_marker == "r1" && e.supporting_marker == "s1" && e.test_statement == "s2";
  });
  ASSERT_NE(it, examples.end());
  EXPECT_EQ(it->gold_label, StanceLabel::kSupportsConsensus);
  EXPECT_EQ(it->consensus, "consensus");
}

TEST(EnumerateExamples, EmptyForDegenerateCorpus) {
  PerspectiveCorpus corpus{{"c", "consensus", std::nullopt}, {"s1"}, {}};
  EXPECT_TRUE(enumerate_examples(corpus).empty());
}

// Exhaustive over 0 <= |S|, |R| <= 6: closed form, enumeration, brute force and the
// per-label counts all agree.
TEST(EnumerateExamples, ExhaustiveSmallCorpora) {
  for (std::size_t s = 0; s <= 6; ++s) {
    for (std::size_t r = 0; r <= 6; ++r) {
      const auto corpus = synthetic_corpus("c", s, r);
      const auto examples = enumerate_examples(corpus);
      const auto oracle = brute_force_examples(corpus);
      ASSERT_EQ(examples.size(), count_examples(s, r)) << s << "x" << r;
      ASSERT_EQ(sorted(examples), sorted(oracle)) << s << "x" << r;

      const auto supports = std::count_if(examples.begin(), examples.end(), [](const auto& e) {
        return e.gold_label == StanceLabel::kSupportsConsensus;
      });
      const std::size_t expected_supports = (s == 0 || r == 0) ? 0 : s * r * (s - 1);
      const std::size_t expected_refutes = (s == 0 || r == 0) ? 0 : s * r * (r - 1);
      EXPECT_EQ(static_cast<std::size_t>(supports), expected_supports);
      EXPECT_EQ(examples.size() - supports, expected_refutes);

      // Distinct and well-formed.
      EXPECT_EQ(std::set<TrainingExample>(examples.begin(), examples.end()).size(),
                examples.size());
      for (const auto& e : examples) {
        EXPECT_NE(e.test_statement, e.refuting_marker);
        EXPECT_NE(e.test_statement, e.supporting_marker);
        const auto& source = e.gold_label == StanceLabel::kSupportsConsensus ? corpus.supporting
                                                                              : corpus.refuting;
        EXPECT_NE(std::find(source.begin(), source.end(), e.test_statement), source.end());
      }
    }
  }
}

TEST(SampleTrainingSet, ReferenceClaimFortyDistinct) {
  const std::vector<PerspectiveCorpus> corpora = {synthetic_corpus("c", 13, 22)};
  const auto sample = sample_training_set(corpora, {4, 10, 7});
  ASSERT_EQ(sample.size(), 40u);
  const std::set<TrainingExample> distinct(sample.begin(), sample.end());
  EXPECT_EQ(distinct.size(), 40u);

  const auto all = enumerate_examples(corpora[0]);
  const std::set<TrainingExample> universe(all.begin(), all.end());
  for (const auto& e : sample) EXPECT_TRUE(universe.contains(e));

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : sample) pairs.emplace(e.refuting_marker, e.supporting_marker);
  EXPECT_EQ(pairs.size(), 4u);
}

TEST(SampleTrainingSet, SkipsClaimsWithoutQuadruple) {
  const std::vector<PerspectiveCorpus> corpora = {
      PerspectiveCorpus{{"c", "claim", std::nullopt}, {"s1"}, {"r1"}}};
  EXPECT_TRUE(sample_training_set(corpora, {4, 10, 1}).empty());
}

TEST(SampleTrainingSet, CapsAtAvailableCombinations) {
  // 1 supporting x 2 refuting: two marker pairs, one remaining statement each.
  const std::vector<PerspectiveCorpus> corpora = {synthetic_corpus("c", 1, 2)};
  const auto sample = sample_training_set(corpora, {4, 10, 3});
  EXPECT_EQ(sample.size(), 2u);
  for (const auto& e : sample) EXPECT_EQ(e.gold_label, StanceLabel::kRefutesConsensus);
}

TEST(SampleTrainingSet, DeterministicAndSeedSensitive) {
  std::vector<PerspectiveCorpus> corpora;
  for (int i = 0; i < 12; ++i) corpora.push_back(synthetic_corpus("c" + std::to_string(i), 5, 7));
  const auto a = sample_training_set(corpora, {4, 10, 11});
  const auto b = sample_training_set(corpora, {4, 10, 11});
  const auto c = sample_training_set(corpora, {4, 10, 12});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SampleTrainingSet, ClaimStreamsIndependent) {
  std::vector<PerspectiveCorpus> corpora = {synthetic_corpus("a", 4, 4),
                                            synthetic_corpus("b", 4, 4)};
  const auto both = sample_training_set(corpora, {2, 3, 5});
  const auto only_b = sample_training_set(std::span(corpora).subspan(1), {2, 3, 5});
  const std::vector<TrainingExample> b_part(both.begin() + 6, both.end());
  EXPECT_EQ(b_part, only_b);
}

TEST(SampleTrainingSet, SubsetOfEnumeration) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto corpus = synthetic_corpus("c", rng() % 6, rng() % 6);
    const auto all = enumerate_examples(corpus);
    const std::set<TrainingExample> universe(all.begin(), all.end());
    const std::vector<PerspectiveCorpus> corpora = {corpus};
    const auto sample = sample_training_set(corpora, {1 + rng() % 5, 1 + rng() % 8, rng()});
    EXPECT_EQ(std::set<TrainingExample>(sample.begin(), sample.end()).size(), sample.size());
    for (const auto& e : sample) EXPECT_TRUE(universe.contains(e));
  }
}

TEST(SampleTrainingSet, RejectsZeroParameters) {
  const std::vector<PerspectiveCorpus> corpora = {synthetic_corpus("c", 3, 3)};
  EXPECT_THROW(sample_training_set(corpora, {0, 10, 1}), DataError);
  EXPECT_THROW(sample_training_set(corpora, {4, 0, 1}), DataError);
}

std::vector<TrainingExample> one_example_per_claim(std::size_t n_claims) {
  std::vector<TrainingExample> examples;
  for (std::size_t i = 0; i < n_claims; ++i) {
    examples.push_back({"claim-" + std::to_string(i), "c", "r", "s", "t",
                        StanceLabel::kRefutesConsensus});
  }
  return examples;
}

std::set<std::string> claims_of(const std::vector<TrainingExample>& examples) {
  std::set<std::string> ids;
  for (const auto& e : examples) ids.insert(e.claim_id);
  return ids;
}

TEST(SplitTrainVal, EightyFiveFifteen) {
  const auto split = split_train_val(one_example_per_claim(100), 0.85, 1);
  EXPECT_EQ(claims_of(split.train).size(), 85u);
  EXPECT_EQ(claims_of(split.val).size(), 15u);
}

TEST(SplitTrainVal, TwoClaimsKeepOneEachSide) {
  const auto split = split_train_val(one_example_per_claim(2), 0.85, 1);
  EXPECT_EQ(split.train.size(), 1u);
  EXPECT_EQ(split.val.size(), 1u);
}

TEST(SplitTrainVal, FloorOfFraction) {
  const auto split = split_train_val(one_example_per_claim(10), 0.85, 4);
  EXPECT_EQ(claims_of(split.train).size(), 8u);
  EXPECT_EQ(claims_of(split.val).size(), 2u);
}

TEST(SplitTrainVal, Errors) {
  EXPECT_THROW(split_train_val(one_example_per_claim(1), 0.85, 1), DataError);
  EXPECT_THROW(split_train_val({}, 0.85, 1), DataError);
  EXPECT_THROW(split_train_val(one_example_per_claim(5), 1.0, 1), DataError);
  EXPECT_THROW(split_train_val(one_example_per_claim(5), 0.0, 1), DataError);
}

TEST(SplitTrainVal, NoLeakageAndDeterministicOverRandomCorpora) {
  std::mt19937_64 rng(2023);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PerspectiveCorpus> corpora;
    const auto n_claims = 2 + rng() % 30;
    for (std::size_t c = 0; c < n_claims; ++c) {
      corpora.push_back(synthetic_corpus("claim" + std::to_string(c), 1 + rng() % 6,
                                         1 + rng() % 6));
    }
    const SamplingParams params{1 + rng() % 4, 1 + rng() % 10, rng()};
    const auto examples = sample_training_set(corpora, params);
    if (claims_of(examples).size() < 2) continue;
    const double fraction = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto split = split_train_val(examples, fraction, params.seed);
    const auto again = split_train_val(examples, fraction, params.seed);
    EXPECT_EQ(split.train, again.train);
    EXPECT_EQ(split.val, again.val);
    EXPECT_EQ(split.train.size() + split.val.size(), examples.size());

    const auto train_ids = claims_of(split.train);
    for (const auto& id : claims_of(split.val)) EXPECT_FALSE(train_ids.contains(id));
  }
}

TEST(TrainingSetExport, JsonRoundTrip) {
  const auto examples = enumerate_examples(synthetic_corpus("c", 2, 3));
  for (const auto& e : examples) EXPECT_EQ(training_example_from_json(to_json(e)), e);
  const auto record = to_json(examples.front());
  for (const char* field :
       {"consensus", "refuting_marker", "supporting_marker", "test_statement", "gold_label"}) {
    EXPECT_TRUE(record.contains(field)) << field;
  }
}

}  // namespace
}  // namespace ctd
