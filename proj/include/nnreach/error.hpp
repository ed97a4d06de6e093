#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nnreach {

// Precondition violated by the caller (dimension mismatch, bad partition, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation that needs a non-empty set received the empty set.
class EmptySetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The activation has no bound rule (neither monotone nor a bespoke interval rule).
class UnsupportedActivation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed network / scenario document. Carries the source name and 1-based line
// (0 when the position is unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  int line_;
};

// An internal consistency check failed; always a bug in this library.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nnreach
