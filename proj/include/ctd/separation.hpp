#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ctd/backend.hpp"
#include "ctd/core.hpp"
#include "json.hpp"

namespace ctd {

struct WelchResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;  // two-sided
  double mean_a = 0.0;
  double mean_b = 0.0;
  double variance_a = 0.0;  // unbiased (n - 1)
  double variance_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Welch's unequal-variance two-sample t-test of mean(a) - mean(b).
// Throws DataError when a sample has fewer than 2 values, or when both samples have zero
// variance and equal means (t is undefined). Zero variance with different means gives
// t = +/-inf and p = 0.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Throws DataError for mismatched dimensions or a zero-norm vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct CenteredEmbedding {
  std::string post_id;
  StanceLabel label = StanceLabel::kRefutesConsensus;
  std::vector<double> values;  // post embedding minus consensus embedding
};

struct SeparationReport {
  double mean_cos_support = 0.0;
  double mean_cos_refute = 0.0;
  WelchResult test;  // a = support similarities, b = refute similarities
  std::vector<CenteredEmbedding> centered;

  double t_statistic() const { return test.t_statistic; }
  double p_value() const { return test.p_value; }

  nlohmann::json to_json() const;
  // Header "label,post_id,d0,...,d{n-1}", one row per post.
  std::string centered_csv() const;
};

// Compares each labeled post's cosine similarity to the consensus embedding across the two
// gold classes. t > 0 means supporting posts sit closer to the consensus.
SeparationReport separation_report(std::span<const Post> posts, const Triplet& triplet,
                                   EmbeddingBackend& backend, std::size_t max_in_flight = 1);

}  // namespace ctd
