#include "splaylab/error.hpp"

namespace splaylab {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::KeyAbsent: return "key-absent";
    case ErrorKind::RotateAtRoot: return "rotate-at-root";
    case ErrorKind::DuplicateKey: return "duplicate-key";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::RootMissing: return "root-missing";
    case ErrorKind::KeyMismatch: return "key-mismatch";
    case ErrorKind::InvalidExecution: return "invalid-execution";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::GuardExceeded: return "guard-exceeded";
    case ErrorKind::Unreachable: return "unreachable";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::EmptyTree: return "empty-tree";
    case ErrorKind::UnknownName: return "unknown-name";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace splaylab
