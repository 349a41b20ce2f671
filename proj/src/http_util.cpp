#include "http_util.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "tcra/error.hpp"

namespace tcra::http {

namespace {

struct ParsedUrl {
    std::string origin; // scheme://host[:port]
    std::string path;   // /... (defaults to /)
};

ParsedUrl split_url(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw ProviderError("endpoint '" + endpoint + "' is not a URL", false);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

bool status_retryable(int status) {
    return status == 0 || status == 408 || status == 429 || status >= 500;
}

Response post_json(const std::string& endpoint, const nlohmann::json& body,
                   const PostOptions& opts, int* retries_out) {
    const ParsedUrl url = split_url(endpoint);

    httplib::Headers headers;
    if (!opts.api_key_env.empty()) {
        const char* key = std::getenv(opts.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            throw ConfigError("environment variable " + opts.api_key_env + " is not set");
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const std::string payload = body.dump();
    int backoff_ms = opts.backoff_initial_ms;
    Response last;
    int attempts = 0;
    for (;;) {
        httplib::Client client(url.origin);
        client.set_connection_timeout(opts.timeout_sec, 0);
        client.set_read_timeout(opts.timeout_sec, 0);
        auto result = client.Post(url.path, headers, payload, "application/json");
        ++attempts;
        if (result) {
            last.status = result->status;
            last.body = result->body;
            last.error.clear();
            if (!status_retryable(last.status)) break;
        } else {
            last.status = 0;
            last.body.clear();
            last.error = httplib::to_string(result.error());
        }
        if (attempts > opts.max_retries) break;
        if (backoff_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms = std::min(backoff_ms * 2, opts.backoff_max_ms);
    }
    if (retries_out != nullptr) *retries_out = attempts - 1;
    return last;
}

nlohmann::json parse_body(const Response& resp, const std::string& what) {
    try {
        return nlohmann::json::parse(resp.body);
    } catch (const nlohmann::json::parse_error&) {
        throw ProviderError(what + ": response is not valid JSON", false, resp.status);
    }
}

void raise(const Response& resp, const std::string& what) {
    if (resp.status == 0)
        throw ProviderError(what + ": transport failure (" + resp.error + ")", true, 0);
    const bool retryable = status_retryable(resp.status);
    throw ProviderError(what + ": HTTP " + std::to_string(resp.status), retryable, resp.status);
}

} // namespace tcra::http
