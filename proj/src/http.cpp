#include "ctd/http.hpp"

#include <thread>

#include "ctd/backend.hpp"
#include "ctd/core.hpp"
#include "httplib.h"

namespace ctd::http {

namespace {

httplib::Client make_client(const Endpoint& endpoint, const JsonClientOptions& options) {
  httplib::Client client(endpoint.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  if (!options.auth_token.empty()) client.set_bearer_token_auth(options.auth_token);
  return client;
}

}  // namespace

Endpoint parse_endpoint(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ConfigError("endpoint must be an http(s) URL: \"" + std::string(url) + "\"");
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported endpoint scheme \"" + std::string(scheme) + "\"");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint endpoint;
  endpoint.origin = std::string(url.substr(0, path_start));
  endpoint.path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
  if (endpoint.origin.size() == scheme_end + 3) {
    throw ConfigError("endpoint has no host: \"" + std::string(url) + "\"");
  }
  return endpoint;
}

void probe(const Endpoint& endpoint, const JsonClientOptions& options) {
  auto client = make_client(endpoint, options);
  // Any HTTP status proves the service is reachable.
  auto result = client.Get(endpoint.path);
  if (!result) {
    throw ConfigError("endpoint unreachable: " + endpoint.origin + endpoint.path + " (" +
                      httplib::to_string(result.error()) + ")");
  }
}

nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body,
                         const JsonClientOptions& options) {
  const std::string payload = body.dump();
  std::string last_error;
  auto delay = options.backoff;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    auto client = make_client(endpoint, options);
    auto result = client.Post(endpoint.path, payload, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      last_error = "HTTP " + std::to_string(result->status);
      continue;
    }
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(std::string("unparseable response body: ") + e.what());
    }
  }
  throw BackendError("request failed after " + std::to_string(options.retries + 1) +
                     " attempts: " + last_error);
}

}  // namespace ctd::http
