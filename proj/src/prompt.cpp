#include "ctd/prompt.hpp"

#include <cctype>

namespace ctd {

namespace {

constexpr std::string_view kHeader =
    "Classify if a statement supports or refutes the consensus statement: ";
constexpr std::string_view kRefutingOpen = "\n\nStatement: ";
constexpr std::string_view kRefutingClose = "\nResponse: Refutes.";
constexpr std::string_view kSupportingOpen = "\n\nStatement: ";
constexpr std::string_view kSupportingClose = "\nResponse: Supports.";
constexpr std::string_view kTestOpen = "\n\nStatement: ";
constexpr std::string_view kTestClose = "\nResponse:";

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

RenderedPrompt render_prompt(const Triplet& triplet, std::string_view test_text,
                             std::string_view post_id) {
  require_valid(validate_triplet(triplet), "triplet");
  if (is_blank(test_text)) throw DataError("test text empty");

  RenderedPrompt prompt;
  prompt.claim_id = triplet.claim_id;
  prompt.post_id = std::string(post_id);
  auto& out = prompt.text;
  out.reserve(kHeader.size() + triplet.consensus.size() + triplet.refuting_evidence.size() +
              triplet.supporting_evidence.size() + test_text.size() + 96);
  out += kHeader;
  out += triplet.consensus;
  out += kRefutingOpen;
  out += triplet.refuting_evidence;
  out += kRefutingClose;
  out += kSupportingOpen;
  out += triplet.supporting_evidence;
  out += kSupportingClose;
  out += kTestOpen;
  out += test_text;
  out += kTestClose;
  return prompt;
}

std::string_view target_for(StanceLabel label) {
  return label == StanceLabel::kRefutesConsensus ? kRefutesTarget : kSupportsTarget;
}

Prediction parse_response(std::string_view raw) {
  const auto text = trim(raw);
  auto token = text.substr(0, std::min(text.size(), text.find_first_of(" \t\n\r\f\v")));
  while (!token.empty() && is_punct(token.back())) token.remove_suffix(1);

  std::string lowered(token);
  for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  if (lowered == "supports" || lowered == "support") return Prediction::kSupportsConsensus;
  if (lowered == "refutes" || lowered == "refute") return Prediction::kRefutesConsensus;
  return Prediction::kAbstain;
}

std::optional<ParsedPrompt> parse_prompt(std::string_view text) {
  if (!text.starts_with(kHeader) || !text.ends_with(kTestClose)) return std::nullopt;
  text.remove_prefix(kHeader.size());
  text.remove_suffix(kTestClose.size());

  // Moves everything before the first `delimiter` into `field` and drops the delimiter.
  const auto take_until = [&text](std::string_view delimiter, std::string& field) -> bool {
    const auto pos = text.find(delimiter);
    if (pos == std::string_view::npos) return false;
    field = std::string(text.substr(0, pos));
    text.remove_prefix(pos + delimiter.size());
    return true;
  };

  ParsedPrompt parsed;
  if (!take_until(kRefutingOpen, parsed.consensus)) return std::nullopt;
  if (!take_until(std::string(kRefutingClose) + std::string(kSupportingOpen),
                  parsed.refuting_evidence)) {
    return std::nullopt;
  }
  if (!take_until(std::string(kSupportingClose) + std::string(kTestOpen),
                  parsed.supporting_evidence)) {
    return std::nullopt;
  }
  parsed.test_text = std::string(text);
  if (parsed.consensus.empty() || parsed.refuting_evidence.empty() ||
      parsed.supporting_evidence.empty() || parsed.test_text.empty()) {
    return std::nullopt;
  }
  return parsed;
}

}  // namespace ctd
