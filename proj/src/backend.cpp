#include "ctd/backend.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ctd/http.hpp"
#include "ctd/io.hpp"
#include "ctd/prompt.hpp"
#include "ctd/random.hpp"

namespace ctd {

namespace {

class MockOracleBackend final : public CompletionBackend {
 public:
  MockOracleBackend(std::string id, std::map<std::string, StanceLabel> gold)
      : id_(std::move(id)), gold_(std::move(gold)) {}

  const std::string& id() const override { return id_; }

  std::string complete(const CompletionRequest& request) override {
    const auto it = gold_.find(std::string(request.post_id));
    if (it == gold_.end()) {
      throw BackendError("no gold label for post \"" + std::string(request.post_id) + "\"");
    }
    return std::string(target_for(it->second));
  }

 private:
  std::string id_;
  std::map<std::string, StanceLabel> gold_;
};

class ScriptedBackend final : public CompletionBackend {
 public:
  ScriptedBackend(std::string id, std::map<std::string, std::string> script)
      : id_(std::move(id)), script_(std::move(script)) {}

  const std::string& id() const override { return id_; }

  std::string complete(const CompletionRequest& request) override {
    const auto it = script_.find(std::string(request.post_id));
    if (it == script_.end()) {
      throw BackendError("no scripted completion for post \"" + std::string(request.post_id) +
                         "\"");
    }
    return it->second;
  }

 private:
  std::string id_;
  std::map<std::string, std::string> script_;
};

http::JsonClientOptions client_options(const std::string& token,
                                       std::chrono::milliseconds timeout, int retries,
                                       std::chrono::milliseconds backoff) {
  return http::JsonClientOptions{token, timeout, retries, backoff};
}

class ExternalServiceBackend final : public CompletionBackend {
 public:
  explicit ExternalServiceBackend(const CompletionBackendSpec& spec)
      : id_(spec.backend_id),
        endpoint_(http::parse_endpoint(spec.endpoint)),
        options_(client_options(spec.auth_token, spec.timeout, spec.retries, spec.backoff)) {}

  const std::string& id() const override { return id_; }

  void check_ready() override { http::probe(endpoint_, options_); }

  std::string complete(const CompletionRequest& request) override {
    const auto response =
        http::post_json(endpoint_, {{"prompt", std::string(request.prompt)}}, options_);
    const auto it = response.find("completion");
    if (it == response.end() || !it->is_string()) {
      throw BackendError("response has no string field 'completion'");
    }
    return it->get<std::string>();
  }

 private:
  std::string id_;
  http::Endpoint endpoint_;
  http::JsonClientOptions options_;
};

class HashEmbeddingBackend final : public EmbeddingBackend {
 public:
  HashEmbeddingBackend(std::string id, std::size_t dimension, std::uint64_t seed)
      : id_(std::move(id)), dimension_(dimension), seed_(seed) {}

  const std::string& id() const override { return id_; }
  std::size_t dimension() const override { return dimension_; }

  // Unit vector with approximately Gaussian components (sum of four uniforms).
  std::vector<double> embed(std::string_view text) override {
    auto engine = keyed_engine(seed_, text);
    std::vector<double> v(dimension_);
    double norm = 0.0;
    for (auto& x : v) {
      x = uniform_unit(engine) + uniform_unit(engine) + uniform_unit(engine) +
          uniform_unit(engine) - 2.0;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& x : v) x /= norm;
    }
    return v;
  }

 private:
  std::string id_;
  std::size_t dimension_;
  std::uint64_t seed_;
};

class TableEmbeddingBackend final : public EmbeddingBackend {
 public:
  TableEmbeddingBackend(std::string id, std::size_t dimension,
                        std::map<std::string, std::vector<double>, std::less<>> table)
      : id_(std::move(id)), dimension_(dimension), table_(std::move(table)) {}

  const std::string& id() const override { return id_; }
  std::size_t dimension() const override { return dimension_; }

  std::vector<double> embed(std::string_view text) override {
    const auto it = table_.find(text);
    if (it == table_.end()) {
      throw BackendError("no precomputed embedding for text \"" + std::string(text) + "\"");
    }
    return it->second;
  }

 private:
  std::string id_;
  std::size_t dimension_;
  std::map<std::string, std::vector<double>, std::less<>> table_;
};

class ExternalEmbeddingBackend final : public EmbeddingBackend {
 public:
  explicit ExternalEmbeddingBackend(const EmbeddingBackendSpec& spec)
      : id_(spec.backend_id),
        dimension_(spec.dimension),
        endpoint_(http::parse_endpoint(spec.endpoint)),
        options_(client_options(spec.auth_token, spec.timeout, spec.retries, spec.backoff)) {}

  const std::string& id() const override { return id_; }
  std::size_t dimension() const override { return dimension_; }
  void check_ready() override { http::probe(endpoint_, options_); }

  std::vector<double> embed(std::string_view text) override {
    const auto response = http::post_json(endpoint_, {{"text", std::string(text)}}, options_);
    const auto it = response.find("embedding");
    if (it == response.end() || !it->is_array()) {
      throw BackendError("response has no array field 'embedding'");
    }
    try {
      return it->get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(std::string("non-numeric embedding: ") + e.what());
    }
  }

 private:
  std::string id_;
  std::size_t dimension_;
  http::Endpoint endpoint_;
  http::JsonClientOptions options_;
};

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kMockOracle:
      return "mock-oracle";
    case BackendKind::kScripted:
      return "scripted";
    case BackendKind::kExternalService:
      return "external";
    case BackendKind::kLocalModel:
      return "local";
  }
  return "unknown";
}

std::optional<BackendKind> parse_backend_kind(std::string_view token) {
  for (auto kind : {BackendKind::kMockOracle, BackendKind::kScripted,
                    BackendKind::kExternalService, BackendKind::kLocalModel}) {
    if (to_string(kind) == token) return kind;
  }
  return std::nullopt;
}

ValidationResult validate_backend_spec(const CompletionBackendSpec& spec) {
  ValidationResult result;
  auto& v = result.violations;
  if (spec.backend_id.empty()) v.emplace_back("backend_id empty");
  if (spec.max_in_flight == 0) v.emplace_back("max_in_flight must be positive");
  if (spec.timeout.count() <= 0) v.emplace_back("timeout must be positive");
  switch (spec.kind) {
    case BackendKind::kMockOracle:
      if (spec.gold_labels.empty()) v.emplace_back("mock-oracle backend needs gold labels");
      break;
    case BackendKind::kScripted:
      if (spec.script.empty()) v.emplace_back("scripted backend needs a post_id->completion map");
      break;
    case BackendKind::kExternalService:
      if (spec.endpoint.empty()) v.emplace_back("external backend needs an endpoint");
      if (spec.retries < 0) v.emplace_back("retries must be non-negative");
      break;
    case BackendKind::kLocalModel:
      break;
  }
  return result;
}

CompletionBackendSpec mock_oracle_spec(std::span<const Post> posts, std::string backend_id) {
  CompletionBackendSpec spec;
  spec.backend_id = std::move(backend_id);
  spec.kind = BackendKind::kMockOracle;
  for (const auto& post : posts) {
    if (post.gold_label) spec.gold_labels.emplace(post.post_id, *post.gold_label);
  }
  return spec;
}

std::unique_ptr<CompletionBackend> make_completion_backend(const CompletionBackendSpec& spec) {
  const auto validation = validate_backend_spec(spec);
  if (!validation.ok()) {
    std::string message = "invalid backend configuration: ";
    for (std::size_t i = 0; i < validation.violations.size(); ++i) {
      if (i) message += "; ";
      message += validation.violations[i];
    }
    throw ConfigError(message);
  }
  switch (spec.kind) {
    case BackendKind::kMockOracle:
      return std::make_unique<MockOracleBackend>(spec.backend_id, spec.gold_labels);
    case BackendKind::kScripted:
      return std::make_unique<ScriptedBackend>(spec.backend_id, spec.script);
    case BackendKind::kExternalService:
      return std::make_unique<ExternalServiceBackend>(spec);
    case BackendKind::kLocalModel:
      break;
  }
  throw ConfigError("local model backend is not compiled into this build");
}

std::map<std::string, std::string> load_script(const std::filesystem::path& path) {
  std::map<std::string, std::string> script;
  io::for_each_jsonl(path, [&](const nlohmann::json& record, std::size_t) {
    auto post_id = io::required_string(record, "post_id");
    auto completion = io::required_string(record, "completion");
    if (!script.emplace(std::move(post_id), std::move(completion)).second) {
      throw DataError("duplicate post_id in script");
    }
  });
  return script;
}

void run_bounded(std::size_t n, std::size_t max_in_flight,
                 const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(n, std::max<std::size_t>(max_in_flight, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<StanceVerdict> classify_stance(const Triplet& triplet, std::span<const Post> posts,
                                           CompletionBackend& backend,
                                           std::size_t max_in_flight) {
  require_valid(validate_triplet(triplet), "triplet");
  std::vector<RenderedPrompt> prompts;
  prompts.reserve(posts.size());
  for (const auto& post : posts) {
    prompts.push_back(render_prompt(triplet, post.text, post.post_id));
  }
  backend.check_ready();

  std::vector<StanceVerdict> verdicts(posts.size());
  run_bounded(posts.size(), max_in_flight, [&](std::size_t i) {
    auto& verdict = verdicts[i];
    verdict.post_id = posts[i].post_id;
    verdict.backend_id = backend.id();
    try {
      verdict.raw_output = backend.complete({prompts[i].text, posts[i].post_id});
      verdict.predicted = parse_response(verdict.raw_output);
    } catch (const BackendError& e) {
      verdict.raw_output = std::string("<backend error: ") + e.what() + ">";
      verdict.predicted = Prediction::kAbstain;
    }
  });
  return verdicts;
}

std::vector<StanceVerdict> classify_stance(const Triplet& triplet, std::span<const Post> posts,
                                           const CompletionBackendSpec& spec) {
  auto backend = make_completion_backend(spec);
  return classify_stance(triplet, posts, *backend, spec.max_in_flight);
}

std::unique_ptr<EmbeddingBackend> make_embedding_backend(const EmbeddingBackendSpec& spec) {
  if (spec.dimension == 0) throw ConfigError("embedding dimension must be positive");
  switch (spec.kind) {
    case EmbeddingKind::kHash:
      return std::make_unique<HashEmbeddingBackend>(spec.backend_id, spec.dimension, spec.seed);
    case EmbeddingKind::kTable:
      if (spec.table.empty()) throw ConfigError("table embedding backend needs vectors");
      return std::make_unique<TableEmbeddingBackend>(spec.backend_id, spec.dimension, spec.table);
    case EmbeddingKind::kExternalService:
      if (spec.endpoint.empty()) throw ConfigError("external embedding backend needs an endpoint");
      return std::make_unique<ExternalEmbeddingBackend>(spec);
  }
  throw ConfigError("unknown embedding backend kind");
}

std::map<std::string, std::vector<double>, std::less<>> load_embedding_table(
    const std::filesystem::path& path) {
  std::map<std::string, std::vector<double>, std::less<>> table;
  std::size_t dimension = 0;
  io::for_each_jsonl(path, [&](const nlohmann::json& record, std::size_t) {
    auto text = std::string(trim(io::required_string(record, "text")));
    const auto it = record.find("embedding");
    if (it == record.end() || !it->is_array()) throw DataError("missing array 'embedding'");
    std::vector<double> vector;
    try {
      vector = it->get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw DataError("embedding must be numeric");
    }
    if (vector.empty()) throw DataError("embedding is empty");
    if (dimension == 0) dimension = vector.size();
    if (vector.size() != dimension) {
      throw DataError("embedding dimension " + std::to_string(vector.size()) + " != " +
                      std::to_string(dimension));
    }
    if (!table.emplace(std::move(text), std::move(vector)).second) {
      throw DataError("duplicate text in embedding table");
    }
  });
  return table;
}

std::vector<std::vector<double>> embed_texts(std::span<const std::string> texts,
                                             EmbeddingBackend& backend,
                                             std::size_t max_in_flight) {
  if (texts.empty()) return {};
  backend.check_ready();
  std::vector<std::vector<double>> vectors(texts.size());
  run_bounded(texts.size(), max_in_flight, [&](std::size_t i) {
    try {
      vectors[i] = backend.embed(texts[i]);
    } catch (const BackendError& e) {
      throw DataError(std::string("embedding failed: ") + e.what());
    }
    if (vectors[i].size() != backend.dimension()) {
      throw DataError("embedding backend \"" + backend.id() + "\" returned " +
                      std::to_string(vectors[i].size()) + " components, declared " +
                      std::to_string(backend.dimension()));
    }
  });
  return vectors;
}

}  // namespace ctd
