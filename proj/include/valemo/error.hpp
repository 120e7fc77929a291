#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace valemo {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the CLI maps it to exit code 2 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lexicon, catalog or bundle line could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Input data is structurally valid but violates a domain rule
/// (empty prototype, empty profile, duplicate id, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace valemo
