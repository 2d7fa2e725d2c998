#include "ctd/filter.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace ctd {
namespace {

CompletionBackendSpec script_spec(const std::vector<Post>& posts,
                                  const std::vector<std::string>& completions) {
  CompletionBackendSpec spec;
  spec.backend_id = "scripted";
  spec.kind = BackendKind::kScripted;
  for (std::size_t i = 0; i < posts.size(); ++i) spec.script[posts[i].post_id] = completions[i];
  spec.max_in_flight = 4;
  return spec;
}

TEST(FilterCandidates, OracleKeepsOnlySpreaders) {
  const auto posts = testing::wisconsin_posts();
  const auto result = filter_candidates(testing::wisconsin_triplet(), posts,
                                        mock_oracle_spec(posts));
  EXPECT_EQ(result.summary.candidates, 164u);
  EXPECT_EQ(result.summary.flagged, 132u);
  EXPECT_EQ(result.summary.released, 32u);
  EXPECT_EQ(result.summary.abstained, 0u);
  for (std::size_t i = 0; i < posts.size(); ++i) {
    EXPECT_EQ(result.decisions[i].post_id, posts[i].post_id);
    EXPECT_EQ(result.decisions[i].action, *posts[i].gold_label == StanceLabel::kRefutesConsensus
                                              ? FilterAction::kFlagForWarning
                                              : FilterAction::kRelease);
  }
  const auto eval = evaluate_filter(result.decisions, posts);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.fdr, 0.0);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.fnr, 0.0);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.f1_positive, 1.0);
  EXPECT_NEAR(eval.baseline.metrics.f1_positive, 0.891, 1e-3);
  EXPECT_NEAR(eval.baseline.metrics.fdr, 0.195, 1e-3);
}

TEST(FilterCandidates, MichiganBaseline) {
  const auto posts = testing::michigan_posts();
  const auto m = metrics(flag_everything_counts(posts));
  EXPECT_NEAR(m.f1_positive, 0.887, 1e-3);
  EXPECT_NEAR(m.fdr, 0.203, 1e-3);
  EXPECT_DOUBLE_EQ(m.fnr, 0.0);
}

TEST(FilterCandidates, MislabeledSpreadersRaiseFnr) {
  const auto posts = testing::wisconsin_posts();
  std::vector<std::string> completions;
  for (const auto& p : posts) {
    completions.push_back(*p.gold_label == StanceLabel::kRefutesConsensus ? "Refutes."
                                                                          : "Supports.");
  }
  for (std::size_t i : {0u, 50u, 131u}) completions[i] = "Supports.";
  const auto result = filter_candidates(testing::wisconsin_triplet(), posts,
                                        script_spec(posts, completions));
  const auto eval = evaluate_filter(result.decisions, posts);
  EXPECT_NEAR(eval.filtered.metrics.fnr, 3.0 / 132.0, 1e-12);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.fdr, 0.0);
  EXPECT_EQ(result.summary.flagged, 129u);
}

TEST(FilterCandidates, AllSupportsReleasesEverything) {
  const auto posts = testing::wisconsin_posts();
  const auto result = filter_candidates(testing::wisconsin_triplet(), posts,
                                        script_spec(posts, std::vector<std::string>(
                                                               posts.size(), "Supports.")));
  EXPECT_EQ(result.summary.flagged, 0u);
  const auto eval = evaluate_filter(result.decisions, posts);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.fnr, 1.0);
  EXPECT_DOUBLE_EQ(eval.filtered.metrics.f1_positive, 0.0);
}

TEST(FilterCandidates, CorrectingAPredictionNeverHurts) {
  const auto posts = testing::labeled_posts("c", 40, 15);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> completions;
    for (std::size_t i = 0; i < posts.size(); ++i) {
      completions.push_back(rng() % 2 ? "Refutes." : "Supports.");
    }
    const auto before = evaluate_filter(
        filter_candidates(testing::covid_cq_triplet(), posts, script_spec(posts, completions))
            .decisions,
        posts);
    const std::size_t i = rng() % posts.size();
    completions[i] = *posts[i].gold_label == StanceLabel::kRefutesConsensus ? "Refutes."
                                                                            : "Supports.";
    const auto after = evaluate_filter(
        filter_candidates(testing::covid_cq_triplet(), posts, script_spec(posts, completions))
            .decisions,
        posts);
    EXPECT_LE(after.filtered.metrics.fnr, before.filtered.metrics.fnr + 1e-15);
    EXPECT_LE(after.filtered.metrics.fdr, before.filtered.metrics.fdr + 1e-15);
    EXPECT_GE(after.filtered.counts.tp + after.filtered.counts.tn,
              before.filtered.counts.tp + before.filtered.counts.tn);
    EXPECT_EQ(after.baseline.counts, before.baseline.counts);
  }
}

TEST(FilterCandidates, AbstainPolicies) {
  const auto posts = testing::labeled_posts("c", 1, 1);
  const auto spec = script_spec(posts, {"maybe", "maybe"});
  const auto refute = filter_candidates(testing::covid_cq_triplet(), posts, spec);
  EXPECT_EQ(refute.summary.flagged, 2u);
  EXPECT_EQ(refute.summary.abstained, 2u);
  EXPECT_EQ(refute.decisions[0].policy_note, "abstain resolved by treat_as_refute");

  const auto support =
      filter_candidates(testing::covid_cq_triplet(), posts, spec, AbstainPolicy::kTreatAsSupport);
  EXPECT_EQ(support.summary.released, 2u);

  const auto drop =
      filter_candidates(testing::covid_cq_triplet(), posts, spec, AbstainPolicy::kDrop);
  EXPECT_EQ(drop.summary.released, 2u);
  EXPECT_FALSE(drop.decisions[0].effective_label.has_value());
  const auto eval = evaluate_filter(drop.decisions, posts);
  EXPECT_EQ(eval.filtered.counts.counted(), 0u);
  EXPECT_EQ(eval.filtered.counts.abstain_count, 2u);
  EXPECT_EQ(eval.baseline.counts.counted(), 2u);
}

TEST(FilterCandidates, Errors) {
  std::vector<Post> none;
  EXPECT_THROW(filter_candidates(testing::covid_cq_triplet(), none, mock_oracle_spec(none)),
               DataError);
  const auto posts = testing::labeled_posts("c", 1, 1);
  CompletionBackendSpec broken;
  broken.backend_id = "x";
  broken.kind = BackendKind::kExternalService;
  EXPECT_THROW(filter_candidates(testing::covid_cq_triplet(), posts, broken), ConfigError);

  const auto result =
      filter_candidates(testing::covid_cq_triplet(), posts, mock_oracle_spec(posts));
  const auto other = testing::labeled_posts("d", 1, 1);
  EXPECT_THROW(evaluate_filter(result.decisions, other), DataError);
}

TEST(FilterDecision, Json) {
  const auto posts = testing::labeled_posts("c", 1, 0);
  const auto result =
      filter_candidates(testing::covid_cq_triplet(), posts, mock_oracle_spec(posts));
  const auto json = result.decisions[0].to_json();
  EXPECT_EQ(json.at("action"), "flag_for_warning");
  EXPECT_EQ(json.at("predicted"), "refute");
  EXPECT_FALSE(json.contains("policy_note"));
}

}  // namespace
}  // namespace ctd
