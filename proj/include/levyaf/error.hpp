#pragma once

#include <stdexcept>
#include <string>

namespace levyaf {

// Numeric failures map to CLI exit code 3, configuration problems to 2.
enum class ErrorKind {
  Config,
  Precondition,
  QuadratureFailure,
  Divergence,
  TruncationFailure,
  UnsupportedModel,
  RejectionBudget,
  HorizonMismatch,
  McBudget,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_config() const noexcept { return kind_ == ErrorKind::Config; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace levyaf
