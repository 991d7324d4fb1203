#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emoc {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed source text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  /// Same error, prefixed with the file it came from.
  SyntaxError(const std::string& origin, const SyntaxError& inner)
      : Error(origin + ":" + inner.what()), line_(inner.line_), column_(inner.column_) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammatical source that references unknown names or calls with the wrong arity.
class ResolveError : public Error {
 public:
  using Error::Error;
};

/// Evaluation could not be carried out (bad entry point, argument mismatch,
/// or a program that never completes enough probe sizes).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration values or unreadable input files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace emoc
