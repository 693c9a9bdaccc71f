#include "gaussep/sampling.hpp"

#include <cmath>
#include <random>

#include "gaussep/states.hpp"

namespace gaussep {

CovarianceMatrix sample_physical(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool pure = unit(rng) < 0.2;
  const double mixedness = pure ? 0.0 : 2.0 * unit(rng);
  return random_physical(rng(), mixedness).cov;
}

CovarianceMatrix sample_perturbed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mat4 base = sample_physical(rng()).matrix();
  if (unit(rng) < 0.5) {
    const double factor = 0.3 + 0.9 * unit(rng);
    return CovarianceMatrix::from_matrix(base * factor, 0.0);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double eps = std::pow(10.0, -4.0 + 4.0 * unit(rng));
  Mat4 noise;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) noise(i, j) = noise(j, i) = normal(rng);
  return CovarianceMatrix::from_matrix(base + noise * eps, 0.0);
}

CovarianceMatrix sample_mixed(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t s = seed * 0x100000001b3ULL + index;
  return index % 2 == 0 ? sample_physical(s) : sample_perturbed(s);
}

CovarianceMatrix sample_nonnegative_det_c(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const CovarianceMatrix v = sample_physical(rng());
    if (determinant(v.c()) >= 0.0) return v;
    const CovarianceMatrix m = mirror_reflect(v);
    if (is_physical_psd(m).ok) return m;
  }
}

}  // namespace gaussep
