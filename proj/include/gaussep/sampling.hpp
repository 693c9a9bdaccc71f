#pragma once

// Seeded matrix generators for the property sweeps.

#include <cstdint>

#include "gaussep/covariance.hpp"

namespace gaussep {

/// Physical covariance via random Williamson data; one in five is pure.
CovarianceMatrix sample_physical(std::uint64_t seed);

/// A physical sample pushed off the physical cone: additive symmetric noise of
/// log-uniform size in [1e-4, 1], or a uniform rescaling by a factor in
/// [0.3, 1.2]. May or may not remain physical.
CovarianceMatrix sample_perturbed(std::uint64_t seed);

/// Even index: physical, odd index: perturbed.
CovarianceMatrix sample_mixed(std::uint64_t seed, std::uint64_t index);

/// Physical with det C ≥ 0: rejection from sample_physical, mirror-reflecting
/// det C < 0 samples whose mirror image is still physical.
CovarianceMatrix sample_nonnegative_det_c(std::uint64_t seed);

}  // namespace gaussep
