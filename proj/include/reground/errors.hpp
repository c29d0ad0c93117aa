#pragma once

#include <stdexcept>
#include <string>

namespace reground {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input document (scene file, transcript, config, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

// DSL / command-language syntax errors carry a character position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A query whose anchor matched nothing, or a functional lookup with no
// stored fact. Distinct from an empty match set at the top level.
class UnresolvableError : public Error {
 public:
  using Error::Error;
};

// Replay transcript has no entry for the requested prompt digest.
class ReplayMissError : public Error {
 public:
  using Error::Error;
};

// Live endpoint failed after the configured number of retries.
class EndpointError : public Error {
 public:
  using Error::Error;
};

// Command executed against a state that does not satisfy its preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace reground
