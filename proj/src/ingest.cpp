#include "ctd/ingest.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "ctd/io.hpp"

namespace ctd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trimmed(const std::string& text) { return std::string(trim(text)); }

std::optional<std::string> trimmed(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return trimmed(*text);
}

StanceLabel parse_label_field(const std::string& token, std::string_view field) {
  const auto label = parse_stance_label(token);
  if (!label) {
    throw DataError("field '" + std::string(field) + "' must be \"support\" or \"refute\", got \"" +
                    token + "\"");
  }
  return *label;
}

void reject_duplicate(std::unordered_set<std::string>& seen, const std::string& id,
                      std::string_view kind) {
  if (!seen.insert(id).second) {
    throw DataError("duplicate " + std::string(kind) + " \"" + id + "\"");
  }
}

json to_record(const Claim& claim) {
  json record = {{"claim_id", claim.claim_id}, {"text", claim.text}};
  if (claim.topic) record["topic"] = *claim.topic;
  return record;
}

json to_record(const Triplet& triplet) {
  return {{"claim_id", triplet.claim_id},
          {"consensus", triplet.consensus},
          {"refuting_evidence", triplet.refuting_evidence},
          {"supporting_evidence", triplet.supporting_evidence}};
}

json to_record(const Post& post) {
  json record = {{"post_id", post.post_id}, {"claim_id", post.claim_id}, {"text", post.text}};
  if (post.gold_label) record["gold_label"] = std::string(to_string(*post.gold_label));
  if (post.source_platform) record["source_platform"] = *post.source_platform;
  return record;
}

json to_record(const StanceVerdict& verdict) {
  return {{"post_id", verdict.post_id},
          {"predicted", std::string(to_string(verdict.predicted))},
          {"raw_output", verdict.raw_output},
          {"backend_id", verdict.backend_id}};
}

template <typename Record>
std::string records_to_jsonl(std::span<const Record> records) {
  std::string out;
  for (const auto& record : records) io::append_jsonl(out, to_record(record));
  return out;
}

}  // namespace

nlohmann::json CorpusManifest::to_json() const {
  json histogram = json::object();
  for (const auto& [label, count] : label_histogram) {
    histogram[std::string(to_string(label))] = count;
  }
  return {{"name", name}, {"claims", claims}, {"posts", posts}, {"label_histogram", histogram}};
}

ValidationResult validate_perspective_corpus(const PerspectiveCorpus& corpus) {
  ValidationResult result = validate_claim(corpus.claim);
  std::set<std::string_view> supporting;
  for (const auto& s : corpus.supporting) {
    if (is_blank(s)) result.violations.emplace_back("empty supporting perspective");
    if (!supporting.insert(s).second) {
      result.violations.push_back("duplicate supporting perspective \"" + s + "\"");
    }
  }
  std::set<std::string_view> refuting;
  for (const auto& r : corpus.refuting) {
    if (is_blank(r)) result.violations.emplace_back("empty refuting perspective");
    if (!refuting.insert(r).second) {
      result.violations.push_back("duplicate refuting perspective \"" + r + "\"");
    }
    if (supporting.contains(r)) {
      result.violations.push_back("perspective listed as both supporting and refuting \"" + r +
                                  "\"");
    }
  }
  return result;
}

std::vector<Claim> load_claims(const fs::path& path) {
  std::vector<Claim> claims;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](const json& record, std::size_t) {
    Claim claim{trimmed(io::required_string(record, "claim_id")),
                trimmed(io::required_string(record, "text")),
                trimmed(io::optional_string(record, "topic"))};
    require_valid(validate_claim(claim), "claim");
    reject_duplicate(seen, claim.claim_id, "claim_id");
    claims.push_back(std::move(claim));
  });
  return claims;
}

std::vector<Triplet> load_triplets(const fs::path& path) {
  std::vector<Triplet> triplets;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](const json& record, std::size_t) {
    Triplet triplet{trimmed(io::required_string(record, "claim_id")),
                    trimmed(io::required_string(record, "consensus")),
                    trimmed(io::required_string(record, "refuting_evidence")),
                    trimmed(io::required_string(record, "supporting_evidence"))};
    require_valid(validate_triplet(triplet), "triplet");
    reject_duplicate(seen, triplet.claim_id, "triplet for claim_id");
    triplets.push_back(std::move(triplet));
  });
  return triplets;
}

std::vector<Post> load_posts(const fs::path& path) {
  std::vector<Post> posts;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](const json& record, std::size_t) {
    Post post;
    post.post_id = trimmed(io::required_string(record, "post_id"));
    post.claim_id = trimmed(io::required_string(record, "claim_id"));
    post.text = trimmed(io::required_string(record, "text"));
    if (auto label = io::optional_string(record, "gold_label")) {
      post.gold_label = parse_label_field(*label, "gold_label");
    }
    post.source_platform = trimmed(io::optional_string(record, "source_platform"));
    require_valid(validate_post(post), "post");
    reject_duplicate(seen, post.post_id, "post_id");
    posts.push_back(std::move(post));
  });
  return posts;
}

std::vector<PerspectiveCorpus> load_perspectives(const fs::path& path,
                                                 std::span<const Claim> claims) {
  std::unordered_map<std::string, const Claim*> claim_by_id;
  for (const auto& claim : claims) claim_by_id.emplace(claim.claim_id, &claim);

  std::vector<PerspectiveCorpus> corpora;
  std::unordered_map<std::string, std::size_t> index_by_id;
  io::for_each_jsonl(path, [&](const json& record, std::size_t) {
    const auto claim_id = trimmed(io::required_string(record, "claim_id"));
    const auto text = trimmed(io::required_string(record, "text"));
    const auto stance = parse_label_field(io::required_string(record, "stance"), "stance");
    const auto claim_text = trimmed(io::optional_string(record, "claim_text"));
    if (is_blank(claim_id)) throw DataError("claim_id empty");
    if (is_blank(text)) throw DataError("perspective text empty");

    auto [it, inserted] = index_by_id.try_emplace(claim_id, corpora.size());
    if (inserted) {
      PerspectiveCorpus corpus;
      corpus.claim.claim_id = claim_id;
      if (!claims.empty()) {
        const auto found = claim_by_id.find(claim_id);
        if (found == claim_by_id.end()) {
          throw DataError("dangling claim_id \"" + claim_id + "\"");
        }
        corpus.claim = *found->second;
      }
      corpora.push_back(std::move(corpus));
    }
    auto& corpus = corpora[it->second];
    if (claim_text && claims.empty()) {
      if (!corpus.claim.text.empty() && corpus.claim.text != *claim_text) {
        throw DataError("conflicting claim_text for claim_id \"" + claim_id + "\"");
      }
      corpus.claim.text = *claim_text;
    }
    (stance == StanceLabel::kSupportsConsensus ? corpus.supporting : corpus.refuting)
        .push_back(text);
  });

  for (const auto& corpus : corpora) {
    require_valid(validate_perspective_corpus(corpus),
                  path.string() + ": perspectives for claim \"" + corpus.claim.claim_id + "\"");
  }
  return corpora;
}

void check_references(std::span<const Claim> claims, std::span<const Post> posts) {
  std::unordered_set<std::string_view> ids;
  for (const auto& claim : claims) ids.insert(claim.claim_id);
  for (const auto& post : posts) {
    if (!ids.contains(post.claim_id)) {
      throw DataError("post \"" + post.post_id + "\": dangling claim_id \"" + post.claim_id +
                      "\"");
    }
  }
}

void check_references(std::span<const Claim> claims, std::span<const Triplet> triplets) {
  std::unordered_set<std::string_view> ids;
  for (const auto& claim : claims) ids.insert(claim.claim_id);
  for (const auto& triplet : triplets) {
    if (!ids.contains(triplet.claim_id)) {
      throw DataError("triplet: dangling claim_id \"" + triplet.claim_id + "\"");
    }
  }
}

CorpusManifest make_manifest(std::string name, std::span<const Claim> claims,
                             std::span<const Post> posts) {
  CorpusManifest manifest;
  manifest.name = std::move(name);
  manifest.claims = claims.size();
  manifest.posts = posts.size();
  for (const auto& post : posts) {
    if (post.gold_label) ++manifest.label_histogram[*post.gold_label];
  }
  return manifest;
}

std::string to_jsonl(std::span<const Claim> claims) { return records_to_jsonl(claims); }
std::string to_jsonl(std::span<const Triplet> triplets) { return records_to_jsonl(triplets); }
std::string to_jsonl(std::span<const Post> posts) { return records_to_jsonl(posts); }
std::string to_jsonl(std::span<const StanceVerdict> verdicts) {
  return records_to_jsonl(verdicts);
}

std::vector<StanceVerdict> load_verdicts(const fs::path& path) {
  std::vector<StanceVerdict> verdicts;
  std::unordered_set<std::string> seen;
  io::for_each_jsonl(path, [&](const json& record, std::size_t) {
    StanceVerdict verdict;
    verdict.post_id = trimmed(io::required_string(record, "post_id"));
    const auto token = io::required_string(record, "predicted");
    const auto predicted = parse_prediction(token);
    if (!predicted) throw DataError("unknown prediction \"" + token + "\"");
    verdict.predicted = *predicted;
    verdict.raw_output = io::optional_string(record, "raw_output").value_or("");
    verdict.backend_id = io::optional_string(record, "backend_id").value_or("");
    if (is_blank(verdict.post_id)) throw DataError("post_id empty");
    reject_duplicate(seen, verdict.post_id, "verdict for post_id");
    verdicts.push_back(std::move(verdict));
  });
  return verdicts;
}

// The claim text travels on the first record of each group; topic is not representable in
// this file kind and lives in the claims file.
std::string to_jsonl(std::span<const PerspectiveCorpus> corpora) {
  std::string out;
  for (const auto& corpus : corpora) {
    bool first = true;
    const auto emit = [&](const std::string& text, StanceLabel stance) {
      json record = {{"claim_id", corpus.claim.claim_id},
                     {"text", text},
                     {"stance", std::string(to_string(stance))}};
      if (first) record["claim_text"] = corpus.claim.text;
      first = false;
      io::append_jsonl(out, record);
    };
    for (const auto& s : corpus.supporting) emit(s, StanceLabel::kSupportsConsensus);
    for (const auto& r : corpus.refuting) emit(r, StanceLabel::kRefutesConsensus);
  }
  return out;
}

void write_canonical(std::span<const Claim> claims, const fs::path& path) {
  for (const auto& claim : claims) require_valid(validate_claim(claim), "claim");
  io::write_file_atomic(path, to_jsonl(claims));
}

void write_canonical(std::span<const Triplet> triplets, const fs::path& path) {
  for (const auto& triplet : triplets) require_valid(validate_triplet(triplet), "triplet");
  io::write_file_atomic(path, to_jsonl(triplets));
}

void write_canonical(std::span<const Post> posts, const fs::path& path) {
  for (const auto& post : posts) require_valid(validate_post(post), "post");
  io::write_file_atomic(path, to_jsonl(posts));
}

void write_canonical(std::span<const PerspectiveCorpus> corpora, const fs::path& path) {
  for (const auto& corpus : corpora) {
    require_valid(validate_perspective_corpus(corpus), "perspectives");
  }
  io::write_file_atomic(path, to_jsonl(corpora));
}

}  // namespace ctd
