#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fkk {

enum class ErrorCode {
  InvalidResolution,
  InvalidDegree,
  InvalidQuadrature,
  OrderOutOfRange,
  InvalidStep,
  InvalidPenalty,
  ShapeMismatch,
  IncompatibleMesh,
  MisalignedDiscontinuity,
  NonIntegralSteps,
  InvalidProjection,
  DegreeViolation,
  FactorizationFailed,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Base of every error thrown by the library. Carries a machine-readable code
/// so the CLI can map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The linear solver could not factorize or solve the step system.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, long pivot)
      : Error(ErrorCode::FactorizationFailed, what), pivot_(pivot) {}

  long pivot() const noexcept { return pivot_; }

 private:
  long pivot_;
};

/// Malformed command line or configuration file.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string token)
      : Error(ErrorCode::Config, what), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

}  // namespace fkk
