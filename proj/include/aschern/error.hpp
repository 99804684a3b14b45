#pragma once

#include <stdexcept>
#include <string>

namespace aschern {

enum class ErrorKind {
  InvalidInput,
  ContractViolation,
  Domain,
  SingularMatrix,
  Capability,
  Gap,
  SpectralGap,
  IntegrandFailure,
  Admissibility,
  Model,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (the CLI
/// in particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace aschern
