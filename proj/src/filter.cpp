#include "ctd/filter.hpp"

#include <unordered_map>

namespace ctd {

using nlohmann::json;

std::string_view to_string(FilterAction action) {
  return action == FilterAction::kFlagForWarning ? "flag_for_warning" : "release";
}

json FilterDecision::to_json() const {
  json record = {{"post_id", post_id},
                 {"predicted", std::string(to_string(verdict.predicted))},
                 {"action", std::string(to_string(action))},
                 {"raw_output", verdict.raw_output},
                 {"backend_id", verdict.backend_id}};
  if (!policy_note.empty()) record["policy_note"] = policy_note;
  return record;
}

json FilterSummary::to_json() const {
  return {{"candidates", candidates},
          {"flagged", flagged},
          {"released", released},
          {"abstained", abstained}};
}

FilterResult filter_candidates(const Triplet& triplet, std::span<const Post> candidates,
                               CompletionBackend& backend, AbstainPolicy policy,
                               std::size_t max_in_flight) {
  if (candidates.empty()) throw DataError("no candidate posts to filter");
  auto verdicts = classify_stance(triplet, candidates, backend, max_in_flight);

  FilterResult result;
  result.decisions.reserve(verdicts.size());
  for (auto& verdict : verdicts) {
    FilterDecision decision;
    decision.post_id = verdict.post_id;
    decision.effective_label = resolve(verdict.predicted, policy);
    decision.action = decision.effective_label == StanceLabel::kRefutesConsensus
                          ? FilterAction::kFlagForWarning
                          : FilterAction::kRelease;
    if (verdict.predicted == Prediction::kAbstain) {
      decision.policy_note = "abstain resolved by " + std::string(to_string(policy));
      ++result.summary.abstained;
    }
    ++(decision.action == FilterAction::kFlagForWarning ? result.summary.flagged
                                                        : result.summary.released);
    decision.verdict = std::move(verdict);
    result.decisions.push_back(std::move(decision));
  }
  result.summary.candidates = result.decisions.size();
  return result;
}

FilterResult filter_candidates(const Triplet& triplet, std::span<const Post> candidates,
                               const CompletionBackendSpec& spec, AbstainPolicy policy) {
  if (candidates.empty()) throw DataError("no candidate posts to filter");
  auto backend = make_completion_backend(spec);
  return filter_candidates(triplet, candidates, *backend, policy, spec.max_in_flight);
}

json FilterEvaluation::to_json() const {
  return {{"filtered", filtered.to_json()}, {"baseline", baseline.to_json()}};
}

ConfusionCounts flag_everything_counts(std::span<const Post> gold) {
  ConfusionCounts counts;
  for (const auto& post : gold) {
    if (!post.gold_label) throw DataError("post \"" + post.post_id + "\" has no gold label");
    tally(counts, StanceLabel::kRefutesConsensus, *post.gold_label);
  }
  return counts;
}

FilterEvaluation evaluate_filter(std::span<const FilterDecision> decisions,
                                 std::span<const Post> gold) {
  std::unordered_map<std::string_view, const Post*> gold_by_id;
  for (const auto& post : gold) gold_by_id.emplace(post.post_id, &post);

  ConfusionCounts filtered;
  std::vector<Post> evaluated;
  evaluated.reserve(decisions.size());
  for (const auto& decision : decisions) {
    const auto it = gold_by_id.find(decision.post_id);
    if (it == gold_by_id.end() || !it->second->gold_label) {
      throw DataError("no gold label for post \"" + decision.post_id + "\"");
    }
    const auto gold_label = *it->second->gold_label;
    evaluated.push_back(*it->second);
    if (decision.verdict.predicted == Prediction::kAbstain) ++filtered.abstain_count;
    if (!decision.effective_label) continue;
    tally(filtered,
          decision.action == FilterAction::kFlagForWarning ? StanceLabel::kRefutesConsensus
                                                           : StanceLabel::kSupportsConsensus,
          gold_label);
  }

  const auto baseline = flag_everything_counts(evaluated);
  return FilterEvaluation{{metrics(filtered), weighted_f1(filtered), filtered},
                          {metrics(baseline), weighted_f1(baseline), baseline}};
}

}  // namespace ctd
