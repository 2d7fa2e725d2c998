#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ctd/core.hpp"
#include "json.hpp"

namespace ctd {

// A claim with its argumentative perspectives, split by stance toward the claim.
struct PerspectiveCorpus {
  Claim claim;
  std::vector<std::string> supporting;
  std::vector<std::string> refuting;

  bool operator==(const PerspectiveCorpus&) const = default;
};

struct CorpusManifest {
  std::string name;
  std::size_t claims = 0;
  std::size_t posts = 0;
  std::map<StanceLabel, std::size_t> label_histogram;

  nlohmann::json to_json() const;
};

ValidationResult validate_perspective_corpus(const PerspectiveCorpus& corpus);

// Line-delimited JSON loaders. Text fields are whitespace-trimmed; every record is
// validated and duplicate ids are rejected. Errors are DataError with "<path>:<line>:".
std::vector<Claim> load_claims(const std::filesystem::path& path);
std::vector<Triplet> load_triplets(const std::filesystem::path& path);
std::vector<Post> load_posts(const std::filesystem::path& path);

// Perspective records {claim_id, text, stance, claim_text?} are grouped by claim_id in
// first-appearance order. The claim text comes from `claims` when given, otherwise from a
// `claim_text` field on any record of the group.
std::vector<PerspectiveCorpus> load_perspectives(const std::filesystem::path& path,
                                                 std::span<const Claim> claims = {});

// Throws DataError naming the first post whose claim_id resolves to no claim.
void check_references(std::span<const Claim> claims, std::span<const Post> posts);
void check_references(std::span<const Claim> claims, std::span<const Triplet> triplets);

CorpusManifest make_manifest(std::string name, std::span<const Claim> claims,
                             std::span<const Post> posts);

// Canonical serialization; load_*(write_canonical(x)) reproduces x exactly.
std::string to_jsonl(std::span<const Claim> claims);
std::string to_jsonl(std::span<const Triplet> triplets);
std::string to_jsonl(std::span<const Post> posts);
std::string to_jsonl(std::span<const PerspectiveCorpus> corpora);

// Verdict records {post_id, predicted, raw_output, backend_id}.
std::string to_jsonl(std::span<const StanceVerdict> verdicts);
std::vector<StanceVerdict> load_verdicts(const std::filesystem::path& path);

void write_canonical(std::span<const Claim> claims, const std::filesystem::path& path);
void write_canonical(std::span<const Triplet> triplets, const std::filesystem::path& path);
void write_canonical(std::span<const Post> posts, const std::filesystem::path& path);
void write_canonical(std::span<const PerspectiveCorpus> corpora,
                     const std::filesystem::path& path);

}  // namespace ctd
