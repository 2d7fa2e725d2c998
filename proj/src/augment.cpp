#include "ctd/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "ctd/io.hpp"
#include "ctd/random.hpp"

namespace ctd {

namespace {

// Partial Fisher-Yates: the first k entries of the result are a uniform k-subset in
// uniformly random order.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t k,
                                        std::mt19937_64& engine) {
  std::vector<std::size_t> indices(population);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  k = std::min(k, population);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_below(engine, population - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

}  // namespace

Triplet TrainingExample::triplet() const {
  return Triplet{claim_id, consensus, refuting_marker, supporting_marker};
}

std::uint64_t count_examples(std::uint64_t n_supporting, std::uint64_t n_refuting) {
  if (n_supporting == 0 || n_refuting == 0) return 0;
  const std::uint64_t remaining = n_supporting + n_refuting - 2;
  return n_supporting * n_refuting * remaining;
}

void for_each_example(const PerspectiveCorpus& corpus,
                      const std::function<void(const TrainingExample&)>& emit) {
  const auto& supporting = corpus.supporting;
  const auto& refuting = corpus.refuting;
  TrainingExample example;
  example.claim_id = corpus.claim.claim_id;
  example.consensus = corpus.claim.text;
  for (std::size_t r = 0; r < refuting.size(); ++r) {
    example.refuting_marker = refuting[r];
    for (std::size_t s = 0; s < supporting.size(); ++s) {
      example.supporting_marker = supporting[s];
      example.gold_label = StanceLabel::kSupportsConsensus;
      for (std::size_t t = 0; t < supporting.size(); ++t) {
        if (t == s) continue;
        example.test_statement = supporting[t];
        emit(example);
      }
      example.gold_label = StanceLabel::kRefutesConsensus;
      for (std::size_t t = 0; t < refuting.size(); ++t) {
        if (t == r) continue;
        example.test_statement = refuting[t];
        emit(example);
      }
    }
  }
}

std::vector<TrainingExample> enumerate_examples(const PerspectiveCorpus& corpus) {
  std::vector<TrainingExample> out;
  out.reserve(count_examples(corpus.supporting.size(), corpus.refuting.size()));
  for_each_example(corpus, [&](const TrainingExample& e) { out.push_back(e); });
  return out;
}

std::vector<TrainingExample> sample_training_set(std::span<const PerspectiveCorpus> corpora,
                                                 const SamplingParams& params) {
  if (params.marker_pairs_per_claim == 0 || params.statements_per_pair == 0) {
    throw DataError("marker_pairs_per_claim and statements_per_pair must be >= 1");
  }
  std::vector<TrainingExample> out;
  for (const auto& corpus : corpora) {
    const auto& supporting = corpus.supporting;
    const auto& refuting = corpus.refuting;
    if (count_examples(supporting.size(), refuting.size()) == 0) continue;

    auto engine = keyed_engine(params.seed, corpus.claim.claim_id);
    const std::size_t n_pairs = supporting.size() * refuting.size();
    const std::size_t n_remaining = supporting.size() + refuting.size() - 2;
    for (const auto pair : sample_indices(n_pairs, params.marker_pairs_per_claim, engine)) {
      const std::size_t r = pair / supporting.size();
      const std::size_t s = pair % supporting.size();
      // Remaining statements are indexed supporting-first, skipping the two markers.
      for (const auto pick : sample_indices(n_remaining, params.statements_per_pair, engine)) {
        TrainingExample example;
        example.claim_id = corpus.claim.claim_id;
        example.consensus = corpus.claim.text;
        example.refuting_marker = refuting[r];
        example.supporting_marker = supporting[s];
        if (pick < supporting.size() - 1) {
          example.test_statement = supporting[pick < s ? pick : pick + 1];
          example.gold_label = StanceLabel::kSupportsConsensus;
        } else {
          const std::size_t k = pick - (supporting.size() - 1);
          example.test_statement = refuting[k < r ? k : k + 1];
          example.gold_label = StanceLabel::kRefutesConsensus;
        }
        out.push_back(std::move(example));
      }
    }
  }
  return out;
}

TrainValSplit split_train_val(std::span<const TrainingExample> examples, double fraction,
                              std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DataError("train fraction must lie strictly between 0 and 1");
  }
  if (examples.empty()) throw DataError("cannot split an empty example set");

  std::vector<std::string> claim_ids;
  std::unordered_set<std::string_view> seen;
  for (const auto& e : examples) {
    if (seen.insert(e.claim_id).second) claim_ids.push_back(e.claim_id);
  }
  const std::size_t n = claim_ids.size();
  if (n < 2) throw DataError("split needs at least 2 claims, got " + std::to_string(n));

  auto n_train = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  std::mt19937_64 engine(splitmix64(seed));
  std::unordered_set<std::string> train_ids;
  for (const auto i : sample_indices(n, n_train, engine)) train_ids.insert(claim_ids[i]);

  TrainValSplit split;
  for (const auto& e : examples) {
    (train_ids.contains(e.claim_id) ? split.train : split.val).push_back(e);
  }
  return split;
}

nlohmann::json to_json(const TrainingExample& example) {
  return {{"claim_id", example.claim_id},
          {"consensus", example.consensus},
          {"refuting_marker", example.refuting_marker},
          {"supporting_marker", example.supporting_marker},
          {"test_statement", example.test_statement},
          {"gold_label", std::string(to_string(example.gold_label))}};
}

TrainingExample training_example_from_json(const nlohmann::json& record) {
  TrainingExample example;
  example.claim_id = io::required_string(record, "claim_id");
  example.consensus = io::required_string(record, "consensus");
  example.refuting_marker = io::required_string(record, "refuting_marker");
  example.supporting_marker = io::required_string(record, "supporting_marker");
  example.test_statement = io::required_string(record, "test_statement");
  const auto label = parse_stance_label(io::required_string(record, "gold_label"));
  if (!label) throw DataError("gold_label must be \"support\" or \"refute\"");
  example.gold_label = *label;
  return example;
}

std::string to_jsonl(std::span<const TrainingExample> examples) {
  std::string out;
  for (const auto& e : examples) io::append_jsonl(out, to_json(e));
  return out;
}

std::vector<TrainingExample> load_training_set(const std::filesystem::path& path) {
  std::vector<TrainingExample> out;
  io::for_each_jsonl(path, [&](const nlohmann::json& record, std::size_t) {
    out.push_back(training_example_from_json(record));
  });
  return out;
}

}  // namespace ctd
