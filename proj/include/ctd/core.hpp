#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctd {

// Raised for malformed or inconsistent input data (CLI exit code 1).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a backend or run configuration is unusable before any work starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gold stance of a text relative to the consensus (fact-check) statement.
// kSupportsConsensus: the text debunks the misleading claim.
// kRefutesConsensus: the text spreads the misleading claim.
enum class StanceLabel { kSupportsConsensus, kRefutesConsensus };

// Classifier outcome. kAbstain is never a gold label; it marks unparseable output.
enum class Prediction { kSupportsConsensus, kRefutesConsensus, kAbstain };

// Canonical file tokens: "support", "refute", "abstain".
std::string_view to_string(StanceLabel label);
std::string_view to_string(Prediction prediction);
std::optional<StanceLabel> parse_stance_label(std::string_view token);
std::optional<Prediction> parse_prediction(std::string_view token);
Prediction to_prediction(StanceLabel label);

struct Claim {
  std::string claim_id;
  std::string text;
  std::optional<std::string> topic;

  bool operator==(const Claim&) const = default;
};

// A consensus statement anchored by two contrastive markers.
struct Triplet {
  std::string claim_id;
  std::string consensus;
  std::string refuting_evidence;
  std::string supporting_evidence;

  bool operator==(const Triplet&) const = default;
};

struct Post {
  std::string post_id;
  std::string claim_id;
  std::string text;
  std::optional<StanceLabel> gold_label;
  std::optional<std::string> source_platform;

  bool operator==(const Post&) const = default;
};

struct StanceVerdict {
  std::string post_id;
  Prediction predicted = Prediction::kAbstain;
  std::string raw_output;
  std::string backend_id;

  bool operator==(const StanceVerdict&) const = default;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationResult validate_claim(const Claim& claim);
ValidationResult validate_triplet(const Triplet& triplet);
ValidationResult validate_post(const Post& post);

// Throws DataError listing every violation. `what` names the record in the message.
void require_valid(const ValidationResult& result, std::string_view what);

std::string_view trim(std::string_view text);
bool is_blank(std::string_view text);

}  // namespace ctd
