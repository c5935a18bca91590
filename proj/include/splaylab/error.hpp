#pragma once

#include <stdexcept>
#include <string>

namespace splaylab {

enum class ErrorKind {
  KeyAbsent,
  RotateAtRoot,
  DuplicateKey,
  Disconnected,
  RootMissing,
  KeyMismatch,
  InvalidExecution,
  InvalidArgument,
  GuardExceeded,
  Unreachable,
  Parse,
  EmptyTree,
  UnknownName,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace splaylab
