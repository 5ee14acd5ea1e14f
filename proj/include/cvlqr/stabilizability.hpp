#pragma once

#include <optional>

#include "cvlqr/system.hpp"

namespace cvlqr {

/// Outcome of a Popov-Belevitch-Hautus style rank test restricted to the
/// eigenvalues on or outside the unit circle.
struct StabilizabilityReport {
  bool stabilizable = true;
  /// First eigenvalue at which the rank condition fails.
  std::optional<Complex> offending_eigenvalue;
};

/// Eigenvalues with modulus >= 1 - kBoundaryTol are tested.
inline constexpr double kBoundaryTol = 1e-9;
/// Singular values below kRankTol * sigma_max count as zero.
inline constexpr double kRankTol = 1e-10;

/// rank [lambda I - embed(A), embed(B)] = 2n at every eigenvalue lambda of
/// embed(A) with |lambda| >= 1.
StabilizabilityReport check_stabilizable_complex(const ComplexLinearSystem& sys);
bool is_stabilizable_complex(const ComplexLinearSystem& sys);

/// rank [lambda I - A2 conj(A2), B2, A2 conj(B2)] = n at every eigenvalue
/// lambda of A2 conj(A2) with |lambda| >= 1.
StabilizabilityReport check_stabilizable_antilinear(const AntilinearSystem& sys);
bool is_stabilizable_antilinear(const AntilinearSystem& sys);

}  // namespace cvlqr
