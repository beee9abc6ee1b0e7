#pragma once

#include <stdexcept>
#include <string>

namespace mosaic {

enum class ErrorCategory {
  Input,         // malformed or inconsistent user input
  Degenerate,    // data that cannot support the requested computation
  Precondition,  // caller violated an operation's precondition
  Internal,      // broken internal invariant
  Io,            // filesystem or subprocess failure
};

const char* to_string(ErrorCategory category);

/// Process exit code used by the CLI for each category.
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : Error(ErrorCategory::Degenerate, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCategory::Precondition, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCategory::Internal, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

}  // namespace mosaic
