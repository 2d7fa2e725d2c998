#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctd/backend.hpp"
#include "ctd/core.hpp"
#include "ctd/eval.hpp"
#include "json.hpp"

namespace ctd {

enum class FilterAction { kFlagForWarning, kRelease };

std::string_view to_string(FilterAction action);

struct FilterDecision {
  std::string post_id;
  StanceVerdict verdict;
  FilterAction action = FilterAction::kFlagForWarning;
  // Label after the abstain policy; nullopt when an abstain was dropped.
  std::optional<StanceLabel> effective_label;
  // Set when the abstain policy decided the action.
  std::string policy_note;

  nlohmann::json to_json() const;
};

struct FilterSummary {
  std::size_t candidates = 0;
  std::size_t flagged = 0;
  std::size_t released = 0;
  std::size_t abstained = 0;

  nlohmann::json to_json() const;
};

struct FilterResult {
  std::vector<FilterDecision> decisions;
  FilterSummary summary;
};

// Classifies every retrieval candidate against the claim's triplet and keeps the warning
// only on posts whose effective label is RefutesConsensus. Decisions follow candidate
// order. Throws DataError for an empty candidate list and ConfigError (before any
// classification) when the backend is unusable.
FilterResult filter_candidates(const Triplet& triplet, std::span<const Post> candidates,
                               CompletionBackend& backend,
                               AbstainPolicy policy = AbstainPolicy::kTreatAsRefute,
                               std::size_t max_in_flight = 1);
FilterResult filter_candidates(const Triplet& triplet, std::span<const Post> candidates,
                               const CompletionBackendSpec& spec,
                               AbstainPolicy policy = AbstainPolicy::kTreatAsRefute);

struct FilterEvaluation {
  ClaimMetrics filtered;
  // Flag-everything reference: the retriever's output with no stance filtering.
  ClaimMetrics baseline;

  nlohmann::json to_json() const;
};

// Flagged = positive prediction; decisions whose abstain was dropped are left out of the
// filtered counts. Throws DataError when a decision has no labeled gold post.
FilterEvaluation evaluate_filter(std::span<const FilterDecision> decisions,
                                 std::span<const Post> gold);

// Counts of the flag-everything baseline over labeled posts.
ConfusionCounts flag_everything_counts(std::span<const Post> gold);

}  // namespace ctd
