#pragma once

#include <stdexcept>
#include <string>

namespace firm {

// Every failure carries the pipeline stage it came from so the CLI can print
// "ERROR <stage>: <message>" and pick the exit status.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Invalid parameters or settings (bad lambda, thresholds out of range, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

/// API misuse: unknown labels, empty inputs, mismatched partitions.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error("usage", message) {}
};

/// Unreadable or malformed input files.
class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error("input", message) {}
};

}  // namespace firm
