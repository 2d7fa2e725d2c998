#include "ctd/core.hpp"

namespace ctd {

namespace {

constexpr std::string_view kWhitespace = " \t\n\r\f\v";

}  // namespace

std::string_view to_string(StanceLabel label) {
  switch (label) {
    case StanceLabel::kSupportsConsensus:
      return "support";
    case StanceLabel::kRefutesConsensus:
      return "refute";
  }
  return "refute";
}

std::string_view to_string(Prediction prediction) {
  switch (prediction) {
    case Prediction::kSupportsConsensus:
      return "support";
    case Prediction::kRefutesConsensus:
      return "refute";
    case Prediction::kAbstain:
      return "abstain";
  }
  return "abstain";
}

std::optional<StanceLabel> parse_stance_label(std::string_view token) {
  if (token == "support") return StanceLabel::kSupportsConsensus;
  if (token == "refute") return StanceLabel::kRefutesConsensus;
  return std::nullopt;
}

std::optional<Prediction> parse_prediction(std::string_view token) {
  if (token == "support") return Prediction::kSupportsConsensus;
  if (token == "refute") return Prediction::kRefutesConsensus;
  if (token == "abstain") return Prediction::kAbstain;
  return std::nullopt;
}

Prediction to_prediction(StanceLabel label) {
  return label == StanceLabel::kSupportsConsensus ? Prediction::kSupportsConsensus
                                                  : Prediction::kRefutesConsensus;
}

std::string_view trim(std::string_view text) {
  const auto begin = text.find_first_not_of(kWhitespace);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(kWhitespace);
  return text.substr(begin, end - begin + 1);
}

bool is_blank(std::string_view text) { return trim(text).empty(); }

ValidationResult validate_claim(const Claim& claim) {
  ValidationResult result;
  if (is_blank(claim.claim_id)) result.violations.emplace_back("claim_id empty");
  if (is_blank(claim.text)) result.violations.emplace_back("text empty");
  return result;
}

ValidationResult validate_triplet(const Triplet& triplet) {
  ValidationResult result;
  auto& v = result.violations;
  if (is_blank(triplet.claim_id)) v.emplace_back("claim_id empty");
  if (is_blank(triplet.consensus)) v.emplace_back("consensus empty");
  if (is_blank(triplet.refuting_evidence)) v.emplace_back("refuting_evidence empty");
  if (is_blank(triplet.supporting_evidence)) v.emplace_back("supporting_evidence empty");

  // Distinctness is only meaningful between non-empty statements.
  const auto same = [](std::string_view a, std::string_view b) {
    return !is_blank(a) && trim(a) == trim(b);
  };
  if (same(triplet.refuting_evidence, triplet.supporting_evidence)) {
    v.emplace_back("markers identical");
  }
  if (same(triplet.consensus, triplet.refuting_evidence)) {
    v.emplace_back("consensus equals refuting_evidence");
  }
  if (same(triplet.consensus, triplet.supporting_evidence)) {
    v.emplace_back("consensus equals supporting_evidence");
  }
  return result;
}

ValidationResult validate_post(const Post& post) {
  ValidationResult result;
  if (is_blank(post.post_id)) result.violations.emplace_back("post_id empty");
  if (is_blank(post.claim_id)) result.violations.emplace_back("claim_id empty");
  if (is_blank(post.text)) result.violations.emplace_back("text empty");
  return result;
}

void require_valid(const ValidationResult& result, std::string_view what) {
  if (result.ok()) return;
  std::string message(what);
  message += ": ";
  for (std::size_t i = 0; i < result.violations.size(); ++i) {
    if (i) message += "; ";
    message += result.violations[i];
  }
  throw DataError(message);
}

}  // namespace ctd
