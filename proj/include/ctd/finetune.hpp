#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ctd/augment.hpp"
#include "ctd/core.hpp"
#include "ctd/ingest.hpp"
#include "json.hpp"

namespace ctd {

inline constexpr std::array<std::string_view, 5> kBaseModelTags = {
    "flan-t5-small", "flan-t5-base", "flan-t5-large", "flan-t5-xl", "flan-t5-xxl"};

bool is_known_model_tag(std::string_view tag);

struct FinetuneParams {
  SamplingParams sampling;
  double train_fraction = 0.85;
  std::string base_model_id = "flan-t5-xxl";
  std::string adapter_method = "lora";
  int epochs = 5;
  // Free-form description of where the corpora came from, copied into the manifest.
  std::string source;
};

// Contract handed to an external trainer. Data paths are relative to the manifest's
// directory.
struct FinetuneManifest {
  std::string base_model_id;
  std::string adapter_method;
  int epochs = 5;
  std::string train_path;
  std::string val_path;
  std::uint64_t seed = 0;
  std::string notes;

  std::string source;
  std::size_t marker_pairs_per_claim = 0;
  std::size_t statements_per_pair = 0;
  double train_fraction = 0.0;
  std::size_t train_examples = 0;
  std::size_t val_examples = 0;
  std::size_t train_claims = 0;
  std::size_t val_claims = 0;

  nlohmann::json to_json() const;
  static FinetuneManifest from_json(const nlohmann::json& record);

  // Recovers the parameters that produced this manifest.
  FinetuneParams params() const;

  bool operator==(const FinetuneManifest&) const = default;
};

inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kTrainFile = "train.jsonl";
inline constexpr std::string_view kValFile = "val.jsonl";

// {prompt, target} where prompt renders the example's triplet with its test statement.
nlohmann::json to_prompt_target(const TrainingExample& example);

// Samples, splits by claim, and writes train.jsonl, val.jsonl and manifest.json into
// `out_dir` (each atomically). Throws DataError when sampling yields nothing.
FinetuneManifest prepare_finetune(std::span<const PerspectiveCorpus> corpora,
                                  const FinetuneParams& params,
                                  const std::filesystem::path& out_dir);

FinetuneManifest load_manifest(const std::filesystem::path& path);

// Checks manifest fields and that both referenced files exist and hold well-formed
// {prompt, target} records whose prompts follow the template.
ValidationResult validate_manifest(const FinetuneManifest& manifest,
                                   const std::filesystem::path& manifest_dir);

}  // namespace ctd
