#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctd/core.hpp"
#include "ctd/ingest.hpp"
#include "json.hpp"

namespace ctd {

// One fine-tuning unit: the triplet context (claim as consensus, one refuting and one
// supporting perspective as markers) plus a held-out perspective to classify.
struct TrainingExample {
  std::string claim_id;
  std::string consensus;
  std::string refuting_marker;
  std::string supporting_marker;
  std::string test_statement;
  StanceLabel gold_label = StanceLabel::kRefutesConsensus;

  bool operator==(const TrainingExample&) const = default;
  auto operator<=>(const TrainingExample&) const = default;

  Triplet triplet() const;
};

// |S| * |R| * (|S| + |R| - 2): choose a refuting marker, a supporting marker, then any
// remaining perspective as the test statement.
std::uint64_t count_examples(std::uint64_t n_supporting, std::uint64_t n_refuting);

// Emits every example of the corpus in a fixed order: refuting marker (outer), supporting
// marker, then test statements from the supporting list followed by the refuting list.
void for_each_example(const PerspectiveCorpus& corpus,
                      const std::function<void(const TrainingExample&)>& emit);
std::vector<TrainingExample> enumerate_examples(const PerspectiveCorpus& corpus);

struct SamplingParams {
  std::size_t marker_pairs_per_claim = 4;
  std::size_t statements_per_pair = 10;
  std::uint64_t seed = 0;
};

// Per claim: draws min(pairs, |S|*|R|) distinct marker pairs, and for each pair
// min(statements, |S|+|R|-2) distinct test statements, all without replacement.
// Each claim uses its own RNG stream keyed by (seed, claim_id).
std::vector<TrainingExample> sample_training_set(std::span<const PerspectiveCorpus> corpora,
                                                 const SamplingParams& params);

struct TrainValSplit {
  std::vector<TrainingExample> train;
  std::vector<TrainingExample> val;
};

// Claim-granular split: floor(fraction * n_claims) claims go to train, clamped so both
// sides keep at least one claim. Example order is preserved within each side.
TrainValSplit split_train_val(std::span<const TrainingExample> examples, double fraction,
                              std::uint64_t seed);

// Training-set export record.
nlohmann::json to_json(const TrainingExample& example);
TrainingExample training_example_from_json(const nlohmann::json& record);
std::string to_jsonl(std::span<const TrainingExample> examples);
std::vector<TrainingExample> load_training_set(const std::filesystem::path& path);

}  // namespace ctd
