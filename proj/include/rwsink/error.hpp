#pragma once

#include <stdexcept>
#include <string>

namespace rwsink {

// Rejected parameter or configuration value.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input text (placement files, config files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A valid config that cannot be instantiated (e.g. disconnected topology
// when connectivity is required).
class SetupError : public std::runtime_error {
 public:
  explicit SetupError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwsink
