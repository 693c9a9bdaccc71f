#pragma once

#include <cstdint>

#include "gaussep/states.hpp"

namespace gaussep {

/// (q1, p1, q2, p2)
using PhasePoint = Vec4;

/// W(ξ) = (4π²√det V)⁻¹ exp(−½(ξ−μ)ᵀV⁻¹(ξ−μ)). Throws SingularCovariance.
double wigner_eval(const GaussianState& state, const PhasePoint& xi);

/// W(Λξ): the partially transposed state's Wigner function.
double partial_transpose_eval(const GaussianState& state, const PhasePoint& xi);

/// The same state with ΛVΛ and Λμ.
GaussianState mirror_state(const GaussianState& state);

struct MomentEstimate {
  Mat4 cov;
  Mat4 std_error;
  Vec4 mean{};
  std::uint64_t samples = 0;
};

/// Draws n points from W through the symmetric square root of V and returns
/// the empirical covariance with batch-means standard errors. Throws
/// InvalidArgument for n < 10.
MomentEstimate sample_moments(const GaussianState& state, std::uint64_t n, std::uint64_t seed);

}  // namespace gaussep
