#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fraclap {

enum class ErrorKind {
  InvalidArgument,
  CollarTooThin,
  GridTooSmall,
  InvalidNesting,
  LengthMismatch,
  Domain,
  MemoryBudget,
  SingularMatrix,
  Precondition,
  Parse,
  Inconclusive,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. The kind is what callers (and the CLI exit-code
/// mapping) switch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace fraclap
