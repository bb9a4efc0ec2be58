#ifndef PRODLAB_ERROR_HPP
#define PRODLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace prodlab {

enum class ErrorKind {
  DivisionByZero,
  NegativeSqrt,
  NonpositiveArgument,
  UnbalancedProduct,
  UnknownBuiltin,
  InsufficientTerms,
  NoConvergence,
  BudgetExceeded,
  MixedFamilies,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NegativeSqrt: return "NegativeSqrt";
    case ErrorKind::NonpositiveArgument: return "NonpositiveArgument";
    case ErrorKind::UnbalancedProduct: return "UnbalancedProduct";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::InsufficientTerms: return "InsufficientTerms";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MixedFamilies: return "MixedFamilies";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure raised by prodlab carries a kind so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prodlab

#endif  // PRODLAB_ERROR_HPP
