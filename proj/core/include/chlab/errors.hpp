#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chlab {

/// Failure categories raised by the library. Each maps onto one named error
/// condition of an operation; the CLI turns them into exit codes.
enum class ErrorCode {
  InvalidArgument,
  // potential_model
  MomentumNotPositive,
  InsufficientDecay,
  // forward_scattering
  IntegratorDiverged,
  NearZeroK,
  DegenerateColumn,
  // phase_geometry
  PoleOfPhase,
  NoAdmissibleAngle,
  SignViolation,
  PreconditionViolated,
  // soliton_rh
  ContourCollision,
  PoleQuery,
  SingularSystem,
  SymmetryViolation,
  ZeroDenominator,
  NonMonotoneX,
  // pde_reference
  BlowUp,
  // harness
  MissingData,
  BoundaryRay,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors that signal a violated numerical invariant rather than
  /// bad input files.
  bool is_invariant_violation() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace chlab
