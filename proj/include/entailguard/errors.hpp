#pragma once

#include <stdexcept>
#include <string>

namespace entailguard {

// Input-side failures: malformed files, bad records, unusable flags.
// The CLI maps these to exit code 1.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Failures while obtaining judgments: model not loaded, transport errors,
// inputs exceeding a backend's hard length limit. CLI exit code 2.
struct BackendError : std::runtime_error {
    explicit BackendError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration (bad threshold, missing backend for a task).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entailguard
