#include "gaussep/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace gaussep {

namespace {

double gaussian_density(const CovarianceMatrix& cov, const Vec4& mean, const PhasePoint& xi) {
  const double det = determinant(cov.matrix());
  if (!(det > 0.0)) throw Error(ErrorCode::SingularCovariance, "covariance is not invertible");
  Mat4 inv;
  try {
    inv = inverse(cov.matrix(), 1e-14);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularCovariance, "covariance is not invertible");
  }
  Vec4 delta{};
  for (std::size_t i = 0; i < 4; ++i) delta[i] = xi[i] - mean[i];
  const double peak = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(det));
  return peak * std::exp(-0.5 * bilinear(delta, inv, delta));
}

}  // namespace

double wigner_eval(const GaussianState& state, const PhasePoint& xi) {
  return gaussian_density(state.cov, state.mean, xi);
}

double partial_transpose_eval(const GaussianState& state, const PhasePoint& xi) {
  return wigner_eval(state, mirror() * xi);
}

GaussianState mirror_state(const GaussianState& state) {
  return {mirror() * state.mean, mirror_reflect(state.cov)};
}

MomentEstimate sample_moments(const GaussianState& state, std::uint64_t n, std::uint64_t seed) {
  if (n < 10) throw Error(ErrorCode::InvalidArgument, "need at least 10 samples");

  const SymEigen<4> eig = sym_eigen(state.cov.matrix());
  Vec4 root{};
  for (std::size_t k = 0; k < 4; ++k) root[k] = std::sqrt(std::max(eig.values[k], 0.0));
  const Mat4 sqrt_v = eig.vectors * Mat4::diagonal(root) * eig.vectors.transpose();

  const std::uint64_t batches = std::min<std::uint64_t>(50, n / 5);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Raw sums per batch; the covariance of each batch feeds the error estimate.
  Vec4 total_sum{};
  Mat4 total_outer;
  std::vector<Mat4> batch_cov;
  batch_cov.reserve(batches);
  std::uint64_t drawn = 0;
  for (std::uint64_t bi = 0; bi < batches; ++bi) {
    const std::uint64_t size = n / batches + (bi < n % batches ? 1 : 0);
    Vec4 sum{};
    Mat4 outer;
    for (std::uint64_t s = 0; s < size; ++s) {
      Vec4 z{};
      for (double& x : z) x = normal(rng);
      Vec4 xi = sqrt_v * z;
      for (std::size_t i = 0; i < 4; ++i) xi[i] += state.mean[i];
      for (std::size_t i = 0; i < 4; ++i) {
        sum[i] += xi[i];
        for (std::size_t j = i; j < 4; ++j) outer(i, j) += xi[i] * xi[j];
      }
    }
    Mat4 cov;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        const double m = size;
        cov(i, j) = cov(j, i) = (outer(i, j) - sum[i] * sum[j] / m) / (m - 1.0);
        total_outer(i, j) += outer(i, j);
      }
    for (std::size_t i = 0; i < 4; ++i) total_sum[i] += sum[i];
    batch_cov.push_back(cov);
    drawn += size;
  }

  MomentEstimate est;
  est.samples = drawn;
  const double m = static_cast<double>(drawn);
  for (std::size_t i = 0; i < 4; ++i) est.mean[i] = total_sum[i] / m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      est.cov(i, j) = est.cov(j, i) =
          (total_outer(i, j) - total_sum[i] * total_sum[j] / m) / (m - 1.0);

  const double nb = static_cast<double>(batches);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      double mean = 0.0;
      for (const Mat4& c : batch_cov) mean += c(i, j);
      mean /= nb;
      double var = 0.0;
      for (const Mat4& c : batch_cov) var += (c(i, j) - mean) * (c(i, j) - mean);
      var /= (nb - 1.0);
      est.std_error(i, j) = est.std_error(j, i) = std::sqrt(var / nb);
    }
  return est;
}

}  // namespace gaussep
