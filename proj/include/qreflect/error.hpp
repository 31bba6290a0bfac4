#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qreflect {

using Complex = std::complex<double>;

enum class ErrorCode {
  kDomain,             // parameter outside its admissible range
  kInvalidInput,       // malformed operator, circuit or file content
  kCompletionFailure,  // no complementary polynomial met the tolerance
  kConditioning,       // numerically indeterminate intermediate quantity
  kGapViolation,       // an eigenphase lies strictly inside the gap
  kTargetAbsent,       // the target eigenphase is not in the spectrum
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::kDomain, what) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorCode::kInvalidInput, what) {}
};

class CompletionFailure : public Error {
 public:
  CompletionFailure(const std::string& what, double residual)
      : Error(ErrorCode::kCompletionFailure, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what)
      : Error(ErrorCode::kConditioning, what) {}
};

class GapViolation : public Error {
 public:
  GapViolation(const std::string& what, double phase)
      : Error(ErrorCode::kGapViolation, what), phase_(phase) {}

  /// Offending eigenphase in radians.
  double phase() const noexcept { return phase_; }

 private:
  double phase_;
};

class TargetAbsent : public Error {
 public:
  explicit TargetAbsent(const std::string& what)
      : Error(ErrorCode::kTargetAbsent, what) {}
};

}  // namespace qreflect
