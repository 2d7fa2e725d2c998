#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctd/core.hpp"
#include "json.hpp"

namespace ctd {

// How an Abstain verdict is resolved before counting.
enum class AbstainPolicy { kTreatAsRefute, kTreatAsSupport, kDrop };

std::string_view to_string(AbstainPolicy policy);
std::optional<AbstainPolicy> parse_abstain_policy(std::string_view token);

// Effective label after the policy; nullopt when the verdict is dropped.
std::optional<StanceLabel> resolve(Prediction predicted, AbstainPolicy policy);

// Positive class is RefutesConsensus (the post spreads the misleading claim).
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  // Abstains seen before policy application, counted whatever the policy.
  std::size_t abstain_count = 0;

  std::size_t counted() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool operator==(const ConfusionCounts&) const = default;

  nlohmann::json to_json() const;
};

// Adds one (effective prediction, gold) observation.
void tally(ConfusionCounts& counts, StanceLabel predicted, StanceLabel gold);

// Verdicts and gold posts are matched by post_id; both sides must cover the same ids and
// every gold post must carry a label. Throws DataError otherwise.
ConfusionCounts confusion(std::span<const StanceVerdict> verdicts, std::span<const Post> gold,
                          AbstainPolicy policy = AbstainPolicy::kTreatAsRefute);

struct MetricRecord {
  double precision = 0.0;
  double recall = 0.0;
  double f1_positive = 0.0;
  double fdr = 0.0;
  double fnr = 0.0;

  nlohmann::json to_json() const;
};

// precision = tp/(tp+fp), recall = tp/(tp+fn), fdr = fp/(fp+tp), fnr = fn/(fn+tp),
// f1 = harmonic mean of precision and recall. Every 0/0 is 0.
MetricRecord metrics(const ConfusionCounts& counts);

// Per-class F1 of both stance classes weighted by gold support, from post-policy counts.
double weighted_f1(const ConfusionCounts& counts);

// Same, from raw verdicts. Abstain is a third predicted value that matches neither class.
// Throws DataError on empty or misaligned input.
double weighted_f1(std::span<const StanceVerdict> verdicts, std::span<const Post> gold);

struct ClaimMetrics {
  MetricRecord metrics;
  double f1_weighted = 0.0;
  ConfusionCounts counts;

  nlohmann::json to_json() const;
};

struct EvalReport {
  std::map<std::string, ClaimMetrics> per_claim;
  // Metrics are the unweighted mean over claims; counts are summed.
  ClaimMetrics aggregate;

  nlohmann::json to_json() const;
  // One {claim_id, ...metrics} record per line.
  std::string per_claim_jsonl() const;
  std::string to_table() const;
};

// Groups by the gold posts' claim_id.
EvalReport evaluate(std::span<const StanceVerdict> verdicts, std::span<const Post> gold,
                    AbstainPolicy policy = AbstainPolicy::kTreatAsRefute);

// ---------------------------------------------------------------------------
// Cross-claim generalization grid

struct ClaimRun {
  std::vector<StanceVerdict> verdicts;
  std::vector<Post> gold;
};

// Key: (train claim, eval claim).
using ClaimRunGrid = std::map<std::pair<std::string, std::string>, ClaimRun>;

struct CrossClaimMatrix {
  std::vector<std::string> rows;  // training claims
  std::vector<std::string> cols;  // evaluation claims
  std::vector<std::vector<double>> cells;

  double at(std::string_view train_claim, std::string_view eval_claim) const;
  std::string to_csv() const;
  std::string to_table() const;
};

// Rows and columns are the sorted distinct ids present in the grid; each cell is the
// weighted F1 of its run. Throws DataError listing every missing (train, eval) pair.
CrossClaimMatrix cross_claim_matrix(const ClaimRunGrid& runs);

}  // namespace ctd
