#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ctd/core.hpp"

namespace ctd {

struct RenderedPrompt {
  std::string text;
  std::string claim_id;
  std::string post_id;
};

inline constexpr std::string_view kRefutesTarget = "Refutes.";
inline constexpr std::string_view kSupportsTarget = "Supports.";

// Fixed template, LF line endings, no trailing newline after the final "Response:".
// Statements are inserted verbatim; nothing is appended or normalized.
//
//   Classify if a statement supports or refutes the consensus statement: {consensus}
//
//   Statement: {refuting_evidence}
//   Response: Refutes.
//
//   Statement: {supporting_evidence}
//   Response: Supports.
//
//   Statement: {test_text}
//   Response:
//
// Throws DataError for an invalid triplet or a blank test text.
RenderedPrompt render_prompt(const Triplet& triplet, std::string_view test_text,
                             std::string_view post_id = {});

// Completion target used for fine-tuning ("Refutes." / "Supports.").
std::string_view target_for(StanceLabel label);

// First-token parse: trim, take the first whitespace-delimited token, drop trailing
// punctuation, ASCII-lowercase. "support"/"supports" and "refute"/"refutes" map to the
// corresponding label; everything else is kAbstain.
Prediction parse_response(std::string_view raw);

// Inverse of render_prompt for well-formed prompts; nullopt when the text does not
// follow the template. Assumes consensus and marker statements contain no blank line.
struct ParsedPrompt {
  std::string consensus;
  std::string refuting_evidence;
  std::string supporting_evidence;
  std::string test_text;

  bool operator==(const ParsedPrompt&) const = default;
};
std::optional<ParsedPrompt> parse_prompt(std::string_view text);

}  // namespace ctd
