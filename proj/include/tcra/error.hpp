#pragma once

#include <stdexcept>
#include <string>

namespace tcra {

// Base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or invariant-violating input data (bad records, bad arguments).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Bad configuration (unknown keys, out-of-range parameters, missing placeholders).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Filesystem problems (missing path, unreadable/unwritable file).
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Remote provider failure. `retryable` distinguishes transient transport/rate
// errors from permanent ones (auth, bad request). `http_status` is 0 when the
// failure happened below HTTP (connect, timeout).
struct ProviderError : Error {
    bool retryable;
    int http_status;
    ProviderError(const std::string& msg, bool retryable_, int status = 0)
        : Error(msg), retryable(retryable_), http_status(status) {}
};

} // namespace tcra
