#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctd/core.hpp"

namespace ctd {

// A single request failed (timeout, transport error, bad response). Recoverable per post.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The wire payload is the prompt alone; post_id lets test backends (oracle, scripted)
// look up their answer.
struct CompletionRequest {
  std::string_view prompt;
  std::string_view post_id;
};

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  virtual const std::string& id() const = 0;

  // Throws ConfigError if the backend cannot serve any request.
  virtual void check_ready() {}

  // Must be safe to call concurrently. Throws BackendError on failure.
  virtual std::string complete(const CompletionRequest& request) = 0;
};

enum class BackendKind { kMockOracle, kScripted, kExternalService, kLocalModel };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view token);

struct CompletionBackendSpec {
  std::string backend_id;
  BackendKind kind = BackendKind::kMockOracle;
  std::size_t max_in_flight = 1;
  std::chrono::milliseconds timeout{30000};

  // kMockOracle: post_id -> gold label.
  std::map<std::string, StanceLabel> gold_labels;
  // kScripted: post_id -> completion.
  std::map<std::string, std::string> script;
  // kExternalService: "http(s)://host[:port]/path"; token sent as a Bearer header.
  std::string endpoint;
  std::string auth_token;
  int retries = 2;
  std::chrono::milliseconds backoff{250};
};

ValidationResult validate_backend_spec(const CompletionBackendSpec& spec);

// Builds a mock-oracle spec answering each labeled post with its gold label.
CompletionBackendSpec mock_oracle_spec(std::span<const Post> posts,
                                       std::string backend_id = "mock-oracle");

// Throws ConfigError for invalid specs or kinds not compiled into this build.
std::unique_ptr<CompletionBackend> make_completion_backend(const CompletionBackendSpec& spec);

// Loads {post_id, completion} records for the scripted backend.
std::map<std::string, std::string> load_script(const std::filesystem::path& path);

// Runs `task(i)` for i in [0, n) on at most `max_in_flight` threads.
void run_bounded(std::size_t n, std::size_t max_in_flight,
                 const std::function<void(std::size_t)>& task);

// One verdict per post, in input order. Per-post backend failures become kAbstain with
// the failure recorded in raw_output; they never abort the batch. Calls check_ready()
// first, so an unreachable backend throws ConfigError before any request is made.
std::vector<StanceVerdict> classify_stance(const Triplet& triplet, std::span<const Post> posts,
                                           CompletionBackend& backend,
                                           std::size_t max_in_flight = 1);
std::vector<StanceVerdict> classify_stance(const Triplet& triplet, std::span<const Post> posts,
                                           const CompletionBackendSpec& spec);

// ---------------------------------------------------------------------------
// Embeddings

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;

  virtual const std::string& id() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual void check_ready() {}

  // Must be safe to call concurrently and deterministic per text.
  virtual std::vector<double> embed(std::string_view text) = 0;
};

enum class EmbeddingKind { kHash, kTable, kExternalService };

struct EmbeddingBackendSpec {
  std::string backend_id;
  EmbeddingKind kind = EmbeddingKind::kHash;
  std::size_t dimension = 768;
  std::size_t max_in_flight = 1;
  std::chrono::milliseconds timeout{30000};

  // kHash: seeded hash-to-vector, for tests and dry runs.
  std::uint64_t seed = 0;
  // kTable: precomputed text -> vector (e.g. exported from a sentence encoder).
  std::map<std::string, std::vector<double>, std::less<>> table;
  // kExternalService: POST {"text": ...} -> {"embedding": [...]}.
  std::string endpoint;
  std::string auth_token;
  int retries = 2;
  std::chrono::milliseconds backoff{250};
};

std::unique_ptr<EmbeddingBackend> make_embedding_backend(const EmbeddingBackendSpec& spec);

// Loads {text, embedding} records; every vector must share one dimension.
std::map<std::string, std::vector<double>, std::less<>> load_embedding_table(
    const std::filesystem::path& path);

// Order-preserving. A vector whose size differs from backend.dimension() is a DataError.
std::vector<std::vector<double>> embed_texts(std::span<const std::string> texts,
                                             EmbeddingBackend& backend,
                                             std::size_t max_in_flight = 1);

}  // namespace ctd
