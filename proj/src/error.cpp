#include "levyaf/error.hpp"

namespace levyaf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::TruncationFailure: return "truncation-failure";
    case ErrorKind::UnsupportedModel: return "unsupported-model";
    case ErrorKind::RejectionBudget: return "rejection-budget-exceeded";
    case ErrorKind::HorizonMismatch: return "horizon-mismatch";
    case ErrorKind::McBudget: return "mc-budget";
  }
  return "unknown";
}

}  // namespace levyaf
