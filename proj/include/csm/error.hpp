#pragma once

#include <stdexcept>
#include <string>

namespace csm {

/// Machine-readable failure categories. The numeric values double as the
/// CLI exit codes.
enum class ErrorCode : int {
  parse = 2,
  precondition = 3,
  retries_exhausted = 4,
  timeout = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(ErrorCode::parse, format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::precondition, what) {}
};

class RetriesExhaustedError : public Error {
 public:
  explicit RetriesExhaustedError(const std::string& what)
      : Error(ErrorCode::retries_exhausted, what) {}
};

class TimeoutError : public Error {
 public:
  explicit TimeoutError(const std::string& what)
      : Error(ErrorCode::timeout, what) {}
};

}  // namespace csm
