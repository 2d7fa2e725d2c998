#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ctd/augment.hpp"
#include "ctd/core.hpp"
#include "ctd/ingest.hpp"

namespace ctd::testing {

inline Triplet covid_cq_triplet() {
  return {"covid-cq-hcq",
          "No clinical studies have confirmed hydroxychloroquine as a cure for COVID-19 "
          "(coronavirus).",
          "Another study has confirmed hydroxychloroquine to be effective in the treatment of "
          "COVID-19 (coronavirus).",
          "It is not medically proven that Hydroxychloroquine (HCQ) can treat COVID-19 "
          "(coronavirus)."};
}

inline Triplet wisconsin_triplet() {
  return {"wi-turnout",
          "The voter turnout in Wisconsin is within historical averages of 73% and does not "
          "indicate any voter fraud.",
          "Fraud in Wisconsin as there were more votes than registered voters and irregular "
          "voter turnout around 90%.",
          "Wisconsin did not have more votes than people registered and their voter turnout "
          "figures is 73%."};
}

inline Triplet michigan_triplet() {
  return {"mi-dead-voters",
          "There is no credible evidence that dead people voted in the election or ballots were "
          "cast fraudulently by deceased voters.",
          "There were many cases of voter fraud nationwide due to dead people's votes getting "
          "counted.",
          "No evidence that 14,000 dead people cast ballots in Wayne County, Michigan."};
}

// Labeled candidates shaped like an annotated retrieval set: `n_refute` posts spreading the
// claim followed by `n_support` posts debunking it.
inline std::vector<Post> labeled_posts(const std::string& claim_id, std::size_t n_refute,
                                       std::size_t n_support) {
  std::vector<Post> posts;
  for (std::size_t i = 0; i < n_refute; ++i) {
    posts.push_back({claim_id + "-r" + std::to_string(i), claim_id,
                     "post " + std::to_string(i) + " repeating the claim about " + claim_id,
                     StanceLabel::kRefutesConsensus, "twitter"});
  }
  for (std::size_t i = 0; i < n_support; ++i) {
    posts.push_back({claim_id + "-s" + std::to_string(i), claim_id,
                     "post " + std::to_string(i) + " debunking the claim about " + claim_id,
                     StanceLabel::kSupportsConsensus, "twitter"});
  }
  return posts;
}

// Wisconsin annotated set: 132 refute + 32 support.
inline std::vector<Post> wisconsin_posts() { return labeled_posts("wi-turnout", 132, 32); }
// Michigan annotated set: 161 refute + 41 support.
inline std::vector<Post> michigan_posts() { return labeled_posts("mi-dead-voters", 161, 41); }

inline PerspectiveCorpus synthetic_corpus(const std::string& claim_id, std::size_t n_supporting,
                                          std::size_t n_refuting) {
  PerspectiveCorpus corpus;
  corpus.claim = {claim_id, "claim text for " + claim_id, std::nullopt};
  for (std::size_t i = 0; i < n_supporting; ++i) {
    corpus.supporting.push_back(claim_id + " supporting perspective " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n_refuting; ++i) {
    corpus.refuting.push_back(claim_id + " refuting perspective " + std::to_string(i));
  }
  return corpus;
}

// Brute force over (refuting marker, supporting marker, any statement that is neither
// marker). Independent of the library's indexing scheme.
inline std::vector<TrainingExample> brute_force_examples(const PerspectiveCorpus& corpus) {
  struct Statement {
    std::string text;
    StanceLabel label;
  };
  std::vector<Statement> pool;
  for (const auto& s : corpus.supporting) pool.push_back({s, StanceLabel::kSupportsConsensus});
  for (const auto& r : corpus.refuting) pool.push_back({r, StanceLabel::kRefutesConsensus});

  std::vector<TrainingExample> out;
  for (const auto& r : corpus.refuting) {
    for (const auto& s : corpus.supporting) {
      for (const auto& t : pool) {
        if (t.text == r || t.text == s) continue;
        out.push_back({corpus.claim.claim_id, corpus.claim.text, r, s, t.text, t.label});
      }
    }
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 engine(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("ctd-test-" + std::to_string(engine()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace ctd::testing
