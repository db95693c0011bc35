#pragma once

#include <stdexcept>
#include <string>

namespace polarscope {

/// Bad run configuration, schema, or file reference. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure while processing otherwise valid configuration. CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input lacks a capability an operation needs (e.g. retweeted-status URLs).
class UnsupportedInputError : public DataError {
public:
    explicit UnsupportedInputError(const std::string& msg) : DataError(msg) {}
};

} // namespace polarscope
