#pragma once

#include <stdexcept>
#include <string>

namespace ubk {

enum class ErrorKind {
  MalformedInput,
  DegenerateBall,
  CeilingExceeded,
  LabelCollision,
  NotInjective,
  SpaceMismatch,
  AmalgamPrecondition,
  NotEpsilonPerturbed,
  WidenBound,
  ConstructionInvariantViolated,
  KMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ubk
