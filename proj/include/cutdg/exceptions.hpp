#pragma once

#include <stdexcept>
#include <string>

namespace cutdg {

/// Bad or inconsistent run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A checked scheme invariant failed at runtime (CLI exit code 3).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A subdomain has no element with |K|/|I_j| >= delta.
struct NoLargeElement : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

/// Euler state with non-positive density or pressure where one was required.
struct InadmissibleState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar macro mean left [m, M]; signals a CFL violation upstream.
struct MeanOutOfBounds : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

/// Euler macro mean left the admissible set; signals a CFL violation upstream.
struct MeanNotAdmissible : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

/// Multistep integrator used before its history was warmed up.
struct ColdHistory : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No exact/reference solution handle for this problem.
struct NoReference : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cutdg
