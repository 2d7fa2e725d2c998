#include "ctd/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "ctd/augment.hpp"
#include "ctd/backend.hpp"
#include "ctd/eval.hpp"
#include "ctd/filter.hpp"
#include "ctd/finetune.hpp"
#include "ctd/ingest.hpp"
#include "ctd/io.hpp"
#include "ctd/prompt.hpp"
#include "ctd/scaling.hpp"
#include "ctd/separation.hpp"

namespace ctd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kEndpointEnv = "CTD_ENDPOINT";
constexpr const char* kTokenEnv = "CTD_API_TOKEN";
constexpr const char* kEmbedEndpointEnv = "CTD_EMBED_ENDPOINT";
constexpr std::string_view kRunConfigFile = "run_config.json";

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value ? value : "";
}

std::string one_line(std::string text) {
  for (auto& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

struct BackendOptions {
  std::string kind;
  std::string backend_id;
  std::string script;
  std::string endpoint;
  std::size_t max_in_flight = 4;
  long timeout_ms = 30000;
  int retries = 2;
};

void add_backend_options(CLI::App* sub, BackendOptions& opts) {
  sub->add_option("--backend", opts.kind, "mock-oracle | scripted | external | local")
      ->required()
      ->check(CLI::IsMember({"mock-oracle", "scripted", "external", "local"}));
  sub->add_option("--backend-id", opts.backend_id, "Tag recorded on each verdict");
  sub->add_option("--script", opts.script, "Scripted completions {post_id, completion}")
      ->check(CLI::ExistingFile);
  sub->add_option("--endpoint", opts.endpoint,
                  std::string("External completion endpoint (default $") + kEndpointEnv + ")");
  sub->add_option("--max-in-flight", opts.max_in_flight, "Concurrent backend requests")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--timeout-ms", opts.timeout_ms, "Per-request timeout")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--retries", opts.retries, "Retries for external requests")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

CompletionBackendSpec make_backend_spec(const BackendOptions& opts, std::span<const Post> posts) {
  const auto kind = parse_backend_kind(opts.kind);
  if (!kind) throw ConfigError("unknown backend \"" + opts.kind + "\"");
  CompletionBackendSpec spec;
  if (*kind == BackendKind::kMockOracle) spec = mock_oracle_spec(posts);
  spec.kind = *kind;
  spec.backend_id = opts.backend_id.empty() ? std::string(to_string(*kind)) : opts.backend_id;
  spec.max_in_flight = opts.max_in_flight;
  spec.timeout = std::chrono::milliseconds(opts.timeout_ms);
  spec.retries = opts.retries;
  if (*kind == BackendKind::kScripted) {
    if (opts.script.empty()) throw ConfigError("--backend scripted requires --script");
    spec.script = load_script(opts.script);
  }
  if (*kind == BackendKind::kExternalService) {
    spec.endpoint = opts.endpoint.empty() ? env_or_empty(kEndpointEnv) : opts.endpoint;
    spec.auth_token = env_or_empty(kTokenEnv);
  }
  return spec;
}

// Posts grouped under the triplet of their claim, in triplet order; indices keep input order.
struct ClaimBatch {
  const Triplet* triplet;
  std::vector<Post> posts;
  std::vector<std::size_t> indices;
};

std::vector<ClaimBatch> batch_by_claim(std::span<const Triplet> triplets,
                                       std::span<const Post> posts) {
  std::unordered_map<std::string_view, std::size_t> slot;
  std::vector<ClaimBatch> batches;
  for (const auto& triplet : triplets) {
    slot.emplace(triplet.claim_id, batches.size());
    batches.push_back({&triplet, {}, {}});
  }
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto it = slot.find(posts[i].claim_id);
    if (it == slot.end()) {
      throw DataError("post \"" + posts[i].post_id + "\": no triplet for claim_id \"" +
                      posts[i].claim_id + "\"");
    }
    batches[it->second].posts.push_back(posts[i]);
    batches[it->second].indices.push_back(i);
  }
  std::erase_if(batches, [](const ClaimBatch& b) { return b.posts.empty(); });
  return batches;
}

const Triplet& select_triplet(const std::vector<Triplet>& triplets, const std::string& claim_id) {
  if (claim_id.empty()) {
    if (triplets.size() != 1) {
      throw DataError("triplet file holds " + std::to_string(triplets.size()) +
                      " triplets; choose one with --claim");
    }
    return triplets.front();
  }
  for (const auto& triplet : triplets) {
    if (triplet.claim_id == claim_id) return triplet;
  }
  throw DataError("no triplet for claim \"" + claim_id + "\"");
}

// Every option of the subcommand with its effective value, secrets excluded.
json config_echo(const CLI::App& sub) {
  json options = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const auto name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    const auto key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_type_size() == 0) {
        options[key] = true;
      } else if (results.size() == 1) {
        options[key] = results.front();
      } else {
        options[key] = results;
      }
    } else if (!opt->get_default_str().empty()) {
      options[key] = opt->get_default_str();
    } else {
      options[key] = nullptr;
    }
  }
  return {{"subcommand", sub.get_name()}, {"options", options}};
}

void write_echo(const CLI::App& sub, const fs::path& path, json extra = json::object()) {
  auto echo = config_echo(sub);
  for (auto& [key, value] : extra.items()) echo[key] = value;
  io::write_file_atomic(path, echo.dump(2) + "\n");
}

fs::path echo_for_file(const fs::path& out) {
  fs::path echo = out;
  echo += ".run_config.json";
  return echo;
}

std::string number(double value) { return json(value).dump(); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contrastive textual deviation: stance filtering against fact-checked claims",
               "ctd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ctd 0.1.0");

  // ingest
  std::string claims_path, posts_path, triplets_path, perspectives_path, corpus_name = "corpus";
  std::string out_path;
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write canonical files");
  ingest->add_option("--claims", claims_path, "Claims file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--posts", posts_path, "Posts file")->check(CLI::ExistingFile);
  ingest->add_option("--triplets", triplets_path, "Triplets file")->check(CLI::ExistingFile);
  ingest->add_option("--perspectives", perspectives_path, "Perspectives file")
      ->check(CLI::ExistingFile);
  ingest->add_option("--name", corpus_name, "Corpus name")->capture_default_str();
  ingest->add_option("--out", out_path, "Output directory")->required();

  // augment
  std::size_t pairs = 4, statements = 10;
  std::uint64_t seed = 0;
  bool enumerate_all = false;
  auto* augment = app.add_subcommand("augment", "Sample (or enumerate) training examples");
  augment->add_option("--perspectives", perspectives_path, "Perspectives file")
      ->required()
      ->check(CLI::ExistingFile);
  augment->add_option("--claims", claims_path, "Claims file supplying claim text")
      ->check(CLI::ExistingFile);
  augment->add_option("--pairs", pairs, "Marker pairs per claim")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  augment->add_option("--statements", statements, "Test statements per marker pair")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  augment->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  augment->add_flag("--enumerate", enumerate_all, "Emit every example instead of sampling");
  augment->add_option("--out", out_path, "Training-set file")->required();

  // render
  auto* render = app.add_subcommand("render", "Render prompts for offline inference");
  render->add_option("--triplet", triplets_path, "Triplets file")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--posts", posts_path, "Posts file")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out_path, "Prompts file {post_id, prompt}")->required();

  // classify
  BackendOptions backend_opts;
  auto* classify = app.add_subcommand("classify", "Classify post stance with a backend");
  classify->add_option("--triplet", triplets_path, "Triplets file")
      ->required()
      ->check(CLI::ExistingFile);
  classify->add_option("--posts", posts_path, "Posts file")->required()->check(CLI::ExistingFile);
  add_backend_options(classify, backend_opts);
  classify->add_option("--out", out_path, "Output directory")->required();

  // finetune-prep
  double fraction = 0.85;
  std::string model = "flan-t5-xxl";
  int epochs = 5;
  auto* finetune = app.add_subcommand("finetune-prep", "Write fine-tuning data and manifest");
  finetune->add_option("--perspectives", perspectives_path, "Perspectives file")
      ->required()
      ->check(CLI::ExistingFile);
  finetune->add_option("--claims", claims_path, "Claims file supplying claim text")
      ->check(CLI::ExistingFile);
  finetune->add_option("--pairs", pairs, "Marker pairs per claim")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  finetune->add_option("--statements", statements, "Test statements per marker pair")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  finetune->add_option("--fraction", fraction, "Train fraction of claims")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  finetune->add_option("--seed", seed, "Sampling and split seed")->capture_default_str();
  finetune->add_option("--model", model, "Base model tag")
      ->capture_default_str()
      ->check(CLI::IsMember(std::vector<std::string>(kBaseModelTags.begin(), kBaseModelTags.end())));
  finetune->add_option("--epochs", epochs, "Maximum epochs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  finetune->add_option("--out", out_path, "Output directory")->required();

  // eval
  std::string verdicts_path, policy_name = "treat_as_refute";
  const auto policy_check = CLI::IsMember({"treat_as_refute", "treat_as_support", "drop"});
  auto* eval = app.add_subcommand("eval", "Score verdicts against gold labels");
  eval->add_option("--verdicts", verdicts_path, "Verdicts file")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--posts", posts_path, "Gold-labeled posts file")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--abstain-policy", policy_name, "Abstain handling")
      ->capture_default_str()
      ->check(policy_check);
  eval->add_option("--out", out_path, "Output directory")->required();

  // cross-eval
  std::string runs_path;
  auto* cross = app.add_subcommand("cross-eval", "Train-claim x eval-claim weighted F1 grid");
  cross->add_option("--runs", runs_path, "Records {train_claim, post_id, predicted}")
      ->required()
      ->check(CLI::ExistingFile);
  cross->add_option("--posts", posts_path, "Gold-labeled posts file")
      ->required()
      ->check(CLI::ExistingFile);
  cross->add_option("--out", out_path, "Output directory")->required();

  // separation
  std::string claim_id, embedding_kind = "hash", embeddings_path, embed_endpoint;
  std::size_t dimension = 768;
  auto* separation = app.add_subcommand("separation", "Embedding separation of stance groups");
  separation->add_option("--triplet", triplets_path, "Triplets file")
      ->required()
      ->check(CLI::ExistingFile);
  separation->add_option("--claim", claim_id, "Claim to analyse when the file holds several");
  separation->add_option("--posts", posts_path, "Gold-labeled posts file")
      ->required()
      ->check(CLI::ExistingFile);
  separation->add_option("--embedding", embedding_kind, "hash | table | external")
      ->capture_default_str()
      ->check(CLI::IsMember({"hash", "table", "external"}));
  separation->add_option("--embeddings", embeddings_path, "Table {text, embedding}")
      ->check(CLI::ExistingFile);
  separation->add_option("--endpoint", embed_endpoint,
                         std::string("Embedding endpoint (default $") + kEmbedEndpointEnv + ")");
  separation->add_option("--dimension", dimension, "Embedding dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  separation->add_option("--seed", seed, "Hash embedding seed")->capture_default_str();
  separation->add_option("--out", out_path, "Output directory")->required();

  // filter
  BackendOptions filter_backend;
  auto* filter = app.add_subcommand("filter", "Drop debunking posts from moderation candidates");
  filter->add_option("--triplet", triplets_path, "Triplets file")
      ->required()
      ->check(CLI::ExistingFile);
  filter->add_option("--posts", posts_path, "Candidate posts file")
      ->required()
      ->check(CLI::ExistingFile);
  add_backend_options(filter, filter_backend);
  filter->add_option("--abstain-policy", policy_name, "Abstain handling")
      ->capture_default_str()
      ->check(policy_check);
  filter->add_option("--out", out_path, "Output directory")->required();

  // scaling-report
  std::string results_path;
  auto* scaling = app.add_subcommand("scaling-report", "Model size vs runtime and F1 table");
  scaling->add_option("--results", results_path, "Records {model, mean_f1, runtime, params?}")
      ->required()
      ->check(CLI::ExistingFile);
  scaling->add_option("--out", out_path, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "ctd: error: usage: " << one_line(e.what()) << "\n";
    return 2;
  }

  try {
    const fs::path out_dir = out_path;

    if (ingest->parsed()) {
      const auto claims = load_claims(claims_path);
      std::vector<Post> posts;
      if (!posts_path.empty()) {
        posts = load_posts(posts_path);
        check_references(claims, posts);
      }
      std::vector<Triplet> triplets;
      if (!triplets_path.empty()) {
        triplets = load_triplets(triplets_path);
        check_references(claims, triplets);
      }
      std::vector<PerspectiveCorpus> perspectives;
      if (!perspectives_path.empty()) perspectives = load_perspectives(perspectives_path, claims);

      const auto manifest = make_manifest(corpus_name, claims, posts);
      write_canonical(std::span<const Claim>(claims), out_dir / "claims.jsonl");
      if (!posts_path.empty()) write_canonical(std::span<const Post>(posts), out_dir / "posts.jsonl");
      if (!triplets_path.empty()) {
        write_canonical(std::span<const Triplet>(triplets), out_dir / "triplets.jsonl");
      }
      if (!perspectives_path.empty()) {
        write_canonical(std::span<const PerspectiveCorpus>(perspectives),
                        out_dir / "perspectives.jsonl");
      }
      io::write_file_atomic(out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
      write_echo(*ingest, out_dir / kRunConfigFile);
      out << manifest.to_json().dump() << "\n";
      return 0;
    }

    if (augment->parsed()) {
      std::vector<Claim> claims;
      if (!claims_path.empty()) claims = load_claims(claims_path);
      const auto corpora = load_perspectives(perspectives_path, claims);
      std::string data;
      std::size_t count = 0;
      if (enumerate_all) {
        for (const auto& corpus : corpora) {
          for_each_example(corpus, [&](const TrainingExample& e) {
            io::append_jsonl(data, to_json(e));
            ++count;
          });
        }
      } else {
        const auto examples = sample_training_set(corpora, {pairs, statements, seed});
        data = to_jsonl(examples);
        count = examples.size();
      }
      io::write_file_atomic(out_dir, data);
      write_echo(*augment, echo_for_file(out_dir), {{"examples", count}});
      out << "examples=" << count << " claims=" << corpora.size() << "\n";
      return 0;
    }

    if (render->parsed()) {
      const auto triplets = load_triplets(triplets_path);
      const auto posts = load_posts(posts_path);
      std::vector<std::string> lines(posts.size());
      for (const auto& batch : batch_by_claim(triplets, posts)) {
        for (std::size_t k = 0; k < batch.posts.size(); ++k) {
          const auto& post = batch.posts[k];
          lines[batch.indices[k]] =
              json{{"post_id", post.post_id},
                   {"prompt", render_prompt(*batch.triplet, post.text, post.post_id).text}}
                  .dump();
        }
      }
      std::string data;
      for (const auto& line : lines) data += line + "\n";
      io::write_file_atomic(out_dir, data);
      write_echo(*render, echo_for_file(out_dir));
      out << "prompts=" << posts.size() << "\n";
      return 0;
    }

    if (classify->parsed()) {
      const auto triplets = load_triplets(triplets_path);
      const auto posts = load_posts(posts_path);
      const auto spec = make_backend_spec(backend_opts, posts);
      auto backend = make_completion_backend(spec);
      backend->check_ready();
      std::vector<StanceVerdict> verdicts(posts.size());
      for (const auto& batch : batch_by_claim(triplets, posts)) {
        auto batch_verdicts =
            classify_stance(*batch.triplet, batch.posts, *backend, spec.max_in_flight);
        for (std::size_t k = 0; k < batch_verdicts.size(); ++k) {
          verdicts[batch.indices[k]] = std::move(batch_verdicts[k]);
        }
      }
      std::size_t abstained = 0;
      for (const auto& v : verdicts) abstained += v.predicted == Prediction::kAbstain;
      io::write_file_atomic(out_dir / "verdicts.jsonl",
                            to_jsonl(std::span<const StanceVerdict>(verdicts)));
      write_echo(*classify, out_dir / kRunConfigFile);
      out << "verdicts=" << verdicts.size() << " abstained=" << abstained << "\n";
      return 0;
    }

    if (finetune->parsed()) {
      std::vector<Claim> claims;
      if (!claims_path.empty()) claims = load_claims(claims_path);
      const auto corpora = load_perspectives(perspectives_path, claims);
      FinetuneParams params;
      params.sampling = {pairs, statements, seed};
      params.train_fraction = fraction;
      params.base_model_id = model;
      params.epochs = epochs;
      params.source = fs::path(perspectives_path).filename().string();
      const auto manifest = prepare_finetune(corpora, params, out_dir);
      write_echo(*finetune, out_dir / kRunConfigFile);
      out << "train_examples=" << manifest.train_examples
          << " val_examples=" << manifest.val_examples
          << " train_claims=" << manifest.train_claims << " val_claims=" << manifest.val_claims
          << "\n";
      return 0;
    }

    if (eval->parsed()) {
      const auto verdicts = load_verdicts(verdicts_path);
      const auto posts = load_posts(posts_path);
      const auto report = evaluate(verdicts, posts, *parse_abstain_policy(policy_name));
      io::write_file_atomic(out_dir / "report.json", report.to_json().dump(2) + "\n");
      io::write_file_atomic(out_dir / "per_claim.jsonl", report.per_claim_jsonl());
      write_echo(*eval, out_dir / kRunConfigFile);
      out << report.to_table();
      return 0;
    }

    if (cross->parsed()) {
      const auto posts = load_posts(posts_path);
      std::unordered_map<std::string_view, const Post*> post_by_id;
      for (const auto& post : posts) post_by_id.emplace(post.post_id, &post);
      ClaimRunGrid grid;
      io::for_each_jsonl(runs_path, [&](const json& record, std::size_t) {
        const auto train_claim = io::required_string(record, "train_claim");
        StanceVerdict verdict;
        verdict.post_id = io::required_string(record, "post_id");
        const auto token = io::required_string(record, "predicted");
        const auto predicted = parse_prediction(token);
        if (!predicted) throw DataError("unknown prediction \"" + token + "\"");
        verdict.predicted = *predicted;
        verdict.raw_output = io::optional_string(record, "raw_output").value_or("");
        const auto it = post_by_id.find(verdict.post_id);
        if (it == post_by_id.end()) throw DataError("unknown post \"" + verdict.post_id + "\"");
        auto& run = grid[{train_claim, it->second->claim_id}];
        run.verdicts.push_back(std::move(verdict));
        run.gold.push_back(*it->second);
      });
      const auto matrix = cross_claim_matrix(grid);
      io::write_file_atomic(out_dir / "matrix.csv", matrix.to_csv());
      write_echo(*cross, out_dir / kRunConfigFile);
      out << matrix.to_table();
      return 0;
    }

    if (separation->parsed()) {
      const auto triplets = load_triplets(triplets_path);
      const auto& triplet = select_triplet(triplets, claim_id);
      std::vector<Post> posts;
      for (auto& post : load_posts(posts_path)) {
        if (post.claim_id == triplet.claim_id) posts.push_back(std::move(post));
      }
      EmbeddingBackendSpec spec;
      spec.backend_id = embedding_kind;
      spec.dimension = dimension;
      spec.seed = seed;
      if (embedding_kind == "hash") {
        spec.kind = EmbeddingKind::kHash;
      } else if (embedding_kind == "table") {
        if (embeddings_path.empty()) throw ConfigError("--embedding table requires --embeddings");
        spec.kind = EmbeddingKind::kTable;
        spec.table = load_embedding_table(embeddings_path);
        spec.dimension = spec.table.begin()->second.size();
      } else {
        spec.kind = EmbeddingKind::kExternalService;
        spec.endpoint = embed_endpoint.empty() ? env_or_empty(kEmbedEndpointEnv) : embed_endpoint;
        spec.auth_token = env_or_empty(kTokenEnv);
      }
      auto backend = make_embedding_backend(spec);
      const auto report = separation_report(posts, triplet, *backend);
      io::write_file_atomic(out_dir / "separation.json", report.to_json().dump(2) + "\n");
      io::write_file_atomic(out_dir / "centered.csv", report.centered_csv());
      write_echo(*separation, out_dir / kRunConfigFile);
      out << "mean_cos_support=" << number(report.mean_cos_support)
          << " mean_cos_refute=" << number(report.mean_cos_refute)
          << " t=" << number(report.t_statistic()) << " p=" << number(report.p_value()) << "\n";
      return 0;
    }

    if (filter->parsed()) {
      const auto triplets = load_triplets(triplets_path);
      const auto posts = load_posts(posts_path);
      const auto policy = *parse_abstain_policy(policy_name);
      const auto spec = make_backend_spec(filter_backend, posts);
      auto backend = make_completion_backend(spec);
      backend->check_ready();

      std::vector<FilterDecision> decisions(posts.size());
      json per_claim = json::object();
      FilterSummary total;
      for (const auto& batch : batch_by_claim(triplets, posts)) {
        auto result =
            filter_candidates(*batch.triplet, batch.posts, *backend, policy, spec.max_in_flight);
        json claim_summary = result.summary.to_json();
        total.candidates += result.summary.candidates;
        total.flagged += result.summary.flagged;
        total.released += result.summary.released;
        total.abstained += result.summary.abstained;
        for (std::size_t k = 0; k < result.decisions.size(); ++k) {
          decisions[batch.indices[k]] = std::move(result.decisions[k]);
        }
        per_claim[batch.triplet->claim_id] = claim_summary;
      }

      json summary = {{"total", total.to_json()}, {"per_claim", per_claim}};
      const bool labeled =
          std::all_of(posts.begin(), posts.end(), [](const Post& p) { return p.gold_label; });
      std::optional<FilterEvaluation> evaluation;
      if (labeled) {
        evaluation = evaluate_filter(decisions, posts);
        summary["evaluation"] = evaluation->to_json();
      }

      std::string data;
      for (const auto& decision : decisions) io::append_jsonl(data, decision.to_json());
      io::write_file_atomic(out_dir / "decisions.jsonl", data);
      io::write_file_atomic(out_dir / "summary.json", summary.dump(2) + "\n");
      write_echo(*filter, out_dir / kRunConfigFile);

      out << "candidates=" << total.candidates << " flagged=" << total.flagged
          << " released=" << total.released << " abstained=" << total.abstained << "\n";
      if (evaluation) {
        const auto& m = evaluation->filtered.metrics;
        const auto& b = evaluation->baseline.metrics;
        out << "summary F1=" << number(m.f1_positive) << " FDR=" << number(m.fdr)
            << " FNR=" << number(m.fnr) << "\n";
        out << "baseline F1=" << number(b.f1_positive) << " FDR=" << number(b.fdr)
            << " FNR=" << number(b.fnr) << "\n";
      }
      return 0;
    }

    if (scaling->parsed()) {
      std::vector<ScalingEntry> entries;
      io::for_each_jsonl(results_path, [&](const json& record, std::size_t) {
        ScalingEntry entry;
        try {
          entry.model_tag = record.at("model").get<std::string>();
          entry.mean_f1 = record.at("mean_f1").get<double>();
          entry.runtime_seconds = record.at("runtime").get<double>();
          if (record.contains("params")) entry.parameters = record.at("params").get<std::uint64_t>();
        } catch (const json::exception& e) {
          throw DataError(e.what());
        }
        entries.push_back(std::move(entry));
      });
      const auto table = scaling_report(entries);
      io::write_file_atomic(out_dir / "scaling.md", table);
      write_echo(*scaling, out_dir / kRunConfigFile);
      out << table;
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "ctd: error: config: " << one_line(e.what()) << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "ctd: error: data: " << one_line(e.what()) << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "ctd: error: data: " << one_line(e.what()) << "\n";
    return 1;
  }
  err << "ctd: error: usage: no subcommand\n";
  return 2;
}

}  // namespace ctd::cli
