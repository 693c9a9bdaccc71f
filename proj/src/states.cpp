#include "gaussep/states.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace gaussep {

GaussianState vacuum() {
  return {Vec4{}, CovarianceMatrix::from_matrix(Mat4::identity() * 0.5)};
}

GaussianState thermal(double n1, double n2) {
  if (!(n1 >= 0.0) || !(n2 >= 0.0))
    throw Error(ErrorCode::NegativeOccupation, "mean photon number must be nonnegative");
  return {Vec4{}, CovarianceMatrix::from_matrix(
                      Mat4::diagonal({n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5}))};
}

SymplecticMatrix two_mode_squeeze_matrix(double r) {
  if (!std::isfinite(r)) throw Error(ErrorCode::NonFinite, "squeeze parameter must be finite");
  const Mat2 ch = Mat2::identity() * std::cosh(r);
  const Mat2 sh = sigma3() * std::sinh(r);
  return SymplecticMatrix::unchecked(from_blocks(ch, sh, sh, ch));
}

GaussianState two_mode_squeezed(double r) {
  return {Vec4{}, transform(vacuum().cov, two_mode_squeeze_matrix(r))};
}

GaussianState random_physical(std::uint64_t seed, double mixedness, double max_log_squeeze) {
  if (!(mixedness >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mixedness must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double nu1 = 0.5 + mixedness * unit(rng);
  const double nu2 = 0.5 + mixedness * unit(rng);
  const SymplecticMatrix s =
      random_symplectic(rng(), RandomSymplecticOptions{false, max_log_squeeze});
  const CovarianceMatrix williamson =
      CovarianceMatrix::from_matrix(Mat4::diagonal({nu1, nu1, nu2, nu2}));
  return {Vec4{}, transform(williamson, s)};
}

GaussianState random_separable(std::uint64_t seed, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "need at least one mixture component");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> excess(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> weights(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& w : weights) total += (w = expo(rng));

  Mat4 second;  // Σ pⱼ(Vⱼ + μⱼμⱼᵀ)
  Vec4 mean{};
  for (double w : weights) {
    const double p = w / total;
    const LocalSymplectic l = random_local(rng(), 1.0);
    const double nu1 = 0.5 + excess(rng);
    const double nu2 = 0.5 + excess(rng);
    const Mat4 product =
        congruence(block_diag(l.alice, l.bob), Mat4::diagonal({nu1, nu1, nu2, nu2}));
    Vec4 mu{};
    for (double& x : mu) x = normal(rng);
    for (std::size_t i = 0; i < 4; ++i) {
      mean[i] += p * mu[i];
      for (std::size_t j = 0; j < 4; ++j) second(i, j) += p * (product(i, j) + mu[i] * mu[j]);
    }
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) second(i, j) -= mean[i] * mean[j];
  return {mean, CovarianceMatrix::from_matrix((second + second.transpose()) * 0.5, 0.0)};
}

}  // namespace gaussep
