#include "gaussep/symplectic.hpp"

#include <numbers>
#include <random>

namespace gaussep {

Mat2 symplectic_j() { return Mat2{{0.0, 1.0}, {-1.0, 0.0}}; }

Mat2 sigma3() { return Mat2::diagonal({1.0, -1.0}); }

Mat4 omega() { return block_diag(symplectic_j(), symplectic_j()); }

Mat4 mirror() {
#ifdef GAUSSEP_MUTATE_MIRROR
  // Mutation canary build: deliberately wrong reflection.
  return Mat4::diagonal({1.0, 1.0, 1.0, 1.0});
#else
  return Mat4::diagonal({1.0, 1.0, 1.0, -1.0});
#endif
}

Mat4 omega_tilde() { return block_diag(symplectic_j(), -symplectic_j()); }

bool is_symplectic(const Mat4& s, double tol) {
  if (!s.all_finite()) return false;
  return (congruence(s, omega()) - omega()).max_abs() <= tol * problem_scale(s);
}

bool is_symplectic(const Mat2& s, double tol) {
  if (!s.all_finite()) return false;
  const Mat2 j = symplectic_j();
  return (congruence(s, j) - j).max_abs() <= tol * problem_scale(s);
}

SymplecticMatrix SymplecticMatrix::checked(const Mat4& m, double tol) {
  if (!is_symplectic(m, tol)) throw Error(ErrorCode::NotSymplectic, "S Ω Sᵀ != Ω");
  return SymplecticMatrix(m, true);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // S⁻¹ = -Ω Sᵀ Ω
  return SymplecticMatrix(-(omega() * m_.transpose() * omega()), verified_);
}

LocalSymplectic LocalSymplectic::checked(const Mat2& alice, const Mat2& bob, double tol) {
  if (!is_symplectic(alice, tol) || !is_symplectic(bob, tol))
    throw Error(ErrorCode::FactorNotSymplectic, "local factor is not in Sp(2,R)");
  return {alice, bob};
}

Mat2 rotation2(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Mat2{{c, s}, {-s, c}};
}

Mat2 squeeze2(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::NonPositiveScale, "squeeze factor must be positive");
  return Mat2::diagonal({x, 1.0 / x});
}

SymplecticMatrix equal_rotation4(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat4 m;
  m(0, 0) = c;
  m(0, 2) = s;
  m(2, 0) = -s;
  m(2, 2) = c;
  m(1, 1) = c;
  m(1, 3) = s;
  m(3, 1) = -s;
  m(3, 3) = c;
  return SymplecticMatrix::unchecked(m);
}

SymplecticMatrix embed_local(const LocalSymplectic& l, double tol) {
  const LocalSymplectic ok = LocalSymplectic::checked(l.alice, l.bob, tol);
  return SymplecticMatrix::unchecked(block_diag(ok.alice, ok.bob));
}

namespace {

Mat2 random_mode(std::mt19937_64& rng, double max_log_squeeze) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> log_squeeze(-max_log_squeeze, max_log_squeeze);
  const double t1 = angle(rng);
  const double r = log_squeeze(rng);
  const double t2 = angle(rng);
  return rotation2(t1) * squeeze2(std::exp(r)) * rotation2(t2);
}

}  // namespace

LocalSymplectic random_local(std::uint64_t seed, double max_log_squeeze) {
  std::mt19937_64 rng(seed);
  LocalSymplectic l;
  l.alice = random_mode(rng, max_log_squeeze);
  l.bob = random_mode(rng, max_log_squeeze);
  return l;
}

SymplecticMatrix random_symplectic(std::uint64_t seed, const RandomSymplecticOptions& opts) {
  const LocalSymplectic l = random_local(seed, opts.max_log_squeeze);
  const SymplecticMatrix local = SymplecticMatrix::unchecked(block_diag(l.alice, l.bob));
  if (opts.local_only) return local;
  // Separate stream for the mixing angles so the local part matches random_local(seed).
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double phi1 = angle(rng);
  const double phi2 = angle(rng);
  return equal_rotation4(phi1) * local * equal_rotation4(phi2);
}

}  // namespace gaussep
