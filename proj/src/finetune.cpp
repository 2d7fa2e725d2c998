#include "ctd/finetune.hpp"

#include <algorithm>
#include <unordered_set>

#include "ctd/io.hpp"
#include "ctd/prompt.hpp"

namespace ctd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kNotes =
    "epochs is an upper bound: stop early once validation loss stops decreasing. "
    "Adapter rank is not fixed; target about 18.8M trainable parameters on the 11B base "
    "(about 0.17% of it, which does not match a stated 84% reduction).";

std::size_t distinct_claims(std::span<const TrainingExample> examples) {
  std::unordered_set<std::string_view> ids;
  for (const auto& e : examples) ids.insert(e.claim_id);
  return ids.size();
}

std::string prompt_target_jsonl(std::span<const TrainingExample> examples) {
  std::string out;
  for (const auto& e : examples) io::append_jsonl(out, to_prompt_target(e));
  return out;
}

void check_training_file(const fs::path& path, ValidationResult& result) {
  if (!fs::exists(path)) {
    result.violations.push_back("missing file " + path.string());
    return;
  }
  try {
    io::for_each_jsonl(path, [&](const json& record, std::size_t) {
      const auto prompt = io::required_string(record, "prompt");
      const auto target = io::required_string(record, "target");
      if (target != kRefutesTarget && target != kSupportsTarget) {
        throw DataError("target must be \"Refutes.\" or \"Supports.\"");
      }
      if (!parse_prompt(prompt)) throw DataError("prompt does not follow the template");
    });
  } catch (const DataError& e) {
    result.violations.emplace_back(e.what());
  }
}

}  // namespace

bool is_known_model_tag(std::string_view tag) {
  return std::find(kBaseModelTags.begin(), kBaseModelTags.end(), tag) != kBaseModelTags.end();
}

json FinetuneManifest::to_json() const {
  return {{"base_model_id", base_model_id},
          {"adapter_method", adapter_method},
          {"epochs", epochs},
          {"train_path", train_path},
          {"val_path", val_path},
          {"seed", seed},
          {"notes", notes},
          {"source", source},
          {"marker_pairs_per_claim", marker_pairs_per_claim},
          {"statements_per_pair", statements_per_pair},
          {"train_fraction", train_fraction},
          {"train_examples", train_examples},
          {"val_examples", val_examples},
          {"train_claims", train_claims},
          {"val_claims", val_claims}};
}

FinetuneManifest FinetuneManifest::from_json(const json& record) {
  FinetuneManifest m;
  try {
    m.base_model_id = record.at("base_model_id").get<std::string>();
    m.adapter_method = record.at("adapter_method").get<std::string>();
    m.epochs = record.at("epochs").get<int>();
    m.train_path = record.at("train_path").get<std::string>();
    m.val_path = record.at("val_path").get<std::string>();
    m.seed = record.at("seed").get<std::uint64_t>();
    m.notes = record.value("notes", "");
    m.source = record.value("source", "");
    m.marker_pairs_per_claim = record.at("marker_pairs_per_claim").get<std::size_t>();
    m.statements_per_pair = record.at("statements_per_pair").get<std::size_t>();
    m.train_fraction = record.at("train_fraction").get<double>();
    m.train_examples = record.at("train_examples").get<std::size_t>();
    m.val_examples = record.at("val_examples").get<std::size_t>();
    m.train_claims = record.at("train_claims").get<std::size_t>();
    m.val_claims = record.at("val_claims").get<std::size_t>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed finetune manifest: ") + e.what());
  }
  return m;
}

FinetuneParams FinetuneManifest::params() const {
  FinetuneParams p;
  p.sampling = {marker_pairs_per_claim, statements_per_pair, seed};
  p.train_fraction = train_fraction;
  p.base_model_id = base_model_id;
  p.adapter_method = adapter_method;
  p.epochs = epochs;
  p.source = source;
  return p;
}

json to_prompt_target(const TrainingExample& example) {
  return {{"prompt", render_prompt(example.triplet(), example.test_statement).text},
          {"target", std::string(target_for(example.gold_label))}};
}

FinetuneManifest prepare_finetune(std::span<const PerspectiveCorpus> corpora,
                                  const FinetuneParams& params, const fs::path& out_dir) {
  if (corpora.empty()) throw DataError("no perspective corpora supplied");
  if (params.epochs < 1) throw DataError("epochs must be >= 1");
  if (!is_known_model_tag(params.base_model_id)) {
    throw DataError("unknown base model \"" + params.base_model_id + "\"");
  }

  const auto examples = sample_training_set(corpora, params.sampling);
  if (examples.empty()) throw DataError("sampling produced no training examples");
  const auto split = split_train_val(examples, params.train_fraction, params.sampling.seed);

  FinetuneManifest manifest;
  manifest.base_model_id = params.base_model_id;
  manifest.adapter_method = params.adapter_method;
  manifest.epochs = params.epochs;
  manifest.train_path = std::string(kTrainFile);
  manifest.val_path = std::string(kValFile);
  manifest.seed = params.sampling.seed;
  manifest.notes = std::string(kNotes);
  manifest.source = params.source;
  manifest.marker_pairs_per_claim = params.sampling.marker_pairs_per_claim;
  manifest.statements_per_pair = params.sampling.statements_per_pair;
  manifest.train_fraction = params.train_fraction;
  manifest.train_examples = split.train.size();
  manifest.val_examples = split.val.size();
  manifest.train_claims = distinct_claims(split.train);
  manifest.val_claims = distinct_claims(split.val);

  io::write_file_atomic(out_dir / kTrainFile, prompt_target_jsonl(split.train));
  io::write_file_atomic(out_dir / kValFile, prompt_target_jsonl(split.val));
  io::write_file_atomic(out_dir / kManifestFile, manifest.to_json().dump(2) + "\n");
  return manifest;
}

FinetuneManifest load_manifest(const fs::path& path) {
  json record;
  try {
    record = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return FinetuneManifest::from_json(record);
}

ValidationResult validate_manifest(const FinetuneManifest& manifest, const fs::path& manifest_dir) {
  ValidationResult result;
  if (manifest.epochs < 1) result.violations.emplace_back("epochs must be >= 1");
  if (!is_known_model_tag(manifest.base_model_id)) {
    result.violations.push_back("unknown base model \"" + manifest.base_model_id + "\"");
  }
  check_training_file(manifest_dir / manifest.train_path, result);
  check_training_file(manifest_dir / manifest.val_path, result);
  return result;
}

}  // namespace ctd
