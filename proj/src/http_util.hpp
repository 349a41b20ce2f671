#pragma once

// Shared HTTP plumbing for the remote providers (embedding, NSP, summarizer,
// chat). Endpoint strings are full URLs; the key, when configured, is read
// from the named environment variable and never logged.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tcra::http {

struct Response {
    int status = 0; // 0 = transport failure (no HTTP response)
    std::string body;
    std::string error; // transport error description when status == 0
};

struct PostOptions {
    std::string api_key_env; // adds "Authorization: Bearer <env value>" when set
    int max_retries = 3;     // retries on transport errors, 408/429 and 5xx
    int backoff_initial_ms = 100;
    int backoff_max_ms = 2000;
    int timeout_sec = 30;
};

bool status_retryable(int status);

// POSTs `body` as JSON. Retries transient failures with capped exponential
// backoff; returns the last response. Throws ConfigError when the configured
// key variable is unset and ProviderError when the endpoint cannot be parsed.
// `retries_out`, when given, receives the number of retries performed.
Response post_json(const std::string& endpoint, const nlohmann::json& body,
                   const PostOptions& opts, int* retries_out = nullptr);

// Parses a JSON response body; throws ProviderError (non-retryable) on garbage.
nlohmann::json parse_body(const Response& resp, const std::string& what);

// Maps a failed response to a ProviderError and throws it.
[[noreturn]] void raise(const Response& resp, const std::string& what);

} // namespace tcra::http
