#pragma once

#include <stdexcept>

namespace qforge {

// Numerical routine failed to converge; message carries diagnostics.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An eigenstate does not vanish at the phase-grid boundary; the caller must
// widen the grid.
struct BoundaryLeakageError : SolverError {
  using SolverError::SolverError;
};

// Input lies outside the stated validity domain of the short-time dephasing
// envelope.
struct EnvelopeDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace qforge
