#pragma once

#include <stdexcept>
#include <string>

namespace pf {

/// Input data violates an operation's precondition (empty text, unknown seed term, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required configuration item (file, list, artifact, flag) is missing or invalid.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file does not follow its documented format. Carries the 1-based line when known.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An upstream pipeline artifact has not been produced yet.
class MissingArtifactError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pf
