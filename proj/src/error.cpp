#include "fraclap/error.hpp"

namespace fraclap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::CollarTooThin: return "collar-too-thin";
    case ErrorKind::GridTooSmall: return "n-too-small";
    case ErrorKind::InvalidNesting: return "invalid-nesting";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::Domain: return "domain-error";
    case ErrorKind::MemoryBudget: return "memory-budget";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Inconclusive: return "inconclusive-verdict";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace fraclap
