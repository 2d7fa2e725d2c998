#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ctd::http {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // "/..." (defaults to "/")
};

// Throws ConfigError for anything that is not an http(s) URL.
Endpoint parse_endpoint(std::string_view url);

struct JsonClientOptions {
  std::string auth_token;
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  std::chrono::milliseconds backoff{250};
};

// Throws ConfigError when no HTTP exchange with the origin is possible.
void probe(const Endpoint& endpoint, const JsonClientOptions& options);

// POSTs a JSON body and returns the parsed JSON response. Transport errors and non-2xx
// statuses are retried `retries` times with exponential backoff; the final failure (or an
// unparseable body) throws BackendError.
nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body,
                         const JsonClientOptions& options);

}  // namespace ctd::http
