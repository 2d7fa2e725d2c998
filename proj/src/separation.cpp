#include "ctd/separation.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ctd {

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Two-pass mean and unbiased variance.
Moments moments(std::span<const double> xs) {
  Moments m;
  for (const double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (const double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DataError("t-test needs at least 2 values per group (got " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()) + ")");
  }
  const auto ma = moments(a);
  const auto mb = moments(b);
  WelchResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;
  r.variance_a = ma.variance;
  r.variance_b = mb.variance;

  const double na = static_cast<double>(r.n_a);
  const double nb = static_cast<double>(r.n_b);
  const double sa = ma.variance / na;
  const double sb = mb.variance / nb;
  const double diff = ma.mean - mb.mean;

  if (sa + sb == 0.0) {
    if (diff == 0.0) throw DataError("t statistic undefined: both groups constant and equal");
    r.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.degrees_of_freedom = na + nb - 2.0;
    r.p_value = 0.0;
    return r;
  }

  r.t_statistic = diff / std::sqrt(sa + sb);
  r.degrees_of_freedom = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  const boost::math::students_t distribution(r.degrees_of_freedom);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(distribution,
                                                             std::fabs(r.t_statistic)));
  if (r.p_value > 1.0) r.p_value = 1.0;
  return r;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("cosine similarity of vectors of different length");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw DataError("cosine similarity of a zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

nlohmann::json SeparationReport::to_json() const {
  return {{"mean_cos_support", mean_cos_support},
          {"mean_cos_refute", mean_cos_refute},
          {"t_statistic", test.t_statistic},
          {"degrees_of_freedom", test.degrees_of_freedom},
          {"p_value", test.p_value},
          {"n_support", test.n_a},
          {"n_refute", test.n_b},
          {"variance_support", test.variance_a},
          {"variance_refute", test.variance_b}};
}

std::string SeparationReport::centered_csv() const {
  std::ostringstream out;
  out << "label,post_id";
  const std::size_t dimension = centered.empty() ? 0 : centered.front().values.size();
  for (std::size_t d = 0; d < dimension; ++d) out << ",d" << d;
  out << '\n';
  char buffer[32];
  for (const auto& row : centered) {
    out << to_string(row.label) << ',' << row.post_id;
    for (const double v : row.values) {
      std::snprintf(buffer, sizeof buffer, "%.17g", v);
      out << ',' << buffer;
    }
    out << '\n';
  }
  return out.str();
}

SeparationReport separation_report(std::span<const Post> posts, const Triplet& triplet,
                                   EmbeddingBackend& backend, std::size_t max_in_flight) {
  require_valid(validate_triplet(triplet), "triplet");
  std::vector<std::string> texts;
  texts.reserve(posts.size() + 1);
  texts.push_back(triplet.consensus);
  for (const auto& post : posts) {
    if (!post.gold_label) throw DataError("post \"" + post.post_id + "\" has no gold label");
    texts.push_back(post.text);
  }
  std::size_t n_support = 0;
  for (const auto& post : posts) n_support += *post.gold_label == StanceLabel::kSupportsConsensus;
  if (n_support < 2 || posts.size() - n_support < 2) {
    throw DataError("separation needs at least 2 posts per label (support=" +
                    std::to_string(n_support) +
                    ", refute=" + std::to_string(posts.size() - n_support) + ")");
  }

  const auto vectors = embed_texts(texts, backend, max_in_flight);
  const auto& consensus = vectors.front();

  std::vector<double> support;
  std::vector<double> refute;
  SeparationReport report;
  report.centered.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto& vector = vectors[i + 1];
    const double similarity = cosine_similarity(vector, consensus);
    const auto label = *posts[i].gold_label;
    (label == StanceLabel::kSupportsConsensus ? support : refute).push_back(similarity);

    CenteredEmbedding row{posts[i].post_id, label, vector};
    for (std::size_t d = 0; d < row.values.size(); ++d) row.values[d] -= consensus[d];
    report.centered.push_back(std::move(row));
  }
  report.test = welch_t_test(support, refute);
  report.mean_cos_support = report.test.mean_a;
  report.mean_cos_refute = report.test.mean_b;
  return report;
}

}  // namespace ctd
