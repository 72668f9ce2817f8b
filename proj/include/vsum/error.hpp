#pragma once

#include <stdexcept>
#include <string>

namespace vsum {

// Exit codes used by the command-line front end.
enum class ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kProvider = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kData; }
};

// Precondition or invariant violation on caller-supplied data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Zero-norm vector passed where a direction is required.
class SingularInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}
  std::size_t line() const noexcept { return line_; }

  // Same error with a location prefix such as a file path.
  static ParseError prefixed(const std::string& prefix, const ParseError& e) {
    ParseError out(prefix + e.what());
    out.line_ = e.line_;
    return out;
  }

 private:
  std::size_t line_ = 0;
};

class MissingKey : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kProvider; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
};

}  // namespace vsum
