#pragma once

#include <cstdint>

#include "gaussep/covariance.hpp"

namespace gaussep {

struct GaussianState {
  Vec4 mean{};
  CovarianceMatrix cov;
};

GaussianState vacuum();

/// Product of thermal states with mean photon numbers n1, n2.
/// Throws NegativeOccupation for n < 0.
GaussianState thermal(double n1, double n2);

/// Two-mode squeezed vacuum, built as S(r) (½I) S(r)ᵀ with
/// S(r) = [[cosh r·I, sinh r·σ₃], [sinh r·σ₃, cosh r·I]].
GaussianState two_mode_squeezed(double r);
SymplecticMatrix two_mode_squeeze_matrix(double r);

/// S·diag(ν₁,ν₁,ν₂,ν₂)·Sᵀ with νᵢ = ½ + U(0, mixedness) and S = random_symplectic(seed).
GaussianState random_physical(std::uint64_t seed, double mixedness, double max_log_squeeze = 1.0);

/// Covariance of a k-component mixture of displaced product Gaussian states:
/// Σ pⱼ(Vⱼ + μⱼμⱼᵀ) − μ̄μ̄ᵀ with weights drawn uniformly from the simplex.
GaussianState random_separable(std::uint64_t seed, int k);

}  // namespace gaussep
