#include "gaussep/covariance.hpp"

#include <cmath>

namespace gaussep {

CovarianceMatrix CovarianceMatrix::from_matrix(const Mat4& raw, double tol) {
  raw.require_finite();
  if (asymmetry(raw) > tol * problem_scale(raw))
    throw Error(ErrorCode::NotSymmetric, "covariance matrix is not symmetric");
  return CovarianceMatrix((raw + raw.transpose()) * 0.5);
}

Invariants invariants(const CovarianceMatrix& v) {
  const Mat2 a = v.a();
  const Mat2 b = v.b();
  const Mat2 c = v.c();
  const Mat2 j = symplectic_j();
  Invariants inv{};
  inv.i1 = determinant(a);
  inv.i2 = determinant(b);
  inv.i3 = determinant(c);
  inv.i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
  inv.detv = determinant(v.matrix());
  return inv;
}

namespace {

double uncertainty_residual(const Invariants& inv, double i3) {
  const double q = 0.25 - i3;
  return inv.i1 * inv.i2 + q * q - inv.i4 - 0.25 * (inv.i1 + inv.i2);
}

bool positive_block(const Mat2& m) { return m(0, 0) > 0.0 && determinant(m) > 0.0; }

// Conditions that, together with a nonnegative residual, make the scalar
// inequality equivalent to the matrix one. `i3` is det C of the matrix being
// tested (sign flipped for the mirror image).
bool cone_guards(const CovarianceMatrix& v, const Invariants& inv, double i3, double tol) {
  const double slack = tol * v.scale();
  return is_positive_definite(v.matrix()) && positive_block(v.a()) && positive_block(v.b()) &&
         inv.i1 >= 0.25 - slack && inv.i2 >= 0.25 - slack &&
         inv.i1 + inv.i2 + 2.0 * i3 >= 0.5 - slack;
}

MarginCheck psd_check(const Mat4& re, const Mat4& im, double tol) {
  const PsdResult r = is_psd_hermitian(HermitianPair(re, im, tol), tol);
  return {r.psd, r.min_eig};
}

}  // namespace

MarginCheck is_physical_psd(const CovarianceMatrix& v, double tol) {
  return psd_check(v.matrix(), omega() * 0.5, tol);
}

ResidualCheck is_physical_invariant(const CovarianceMatrix& v, double tol) {
  const Invariants inv = invariants(v);
  const double residual = uncertainty_residual(inv, inv.i3);
  const bool ok = residual >= -tol * v.scale() && cone_guards(v, inv, inv.i3, tol);
  return {ok, residual};
}

CovarianceMatrix mirror_reflect(const CovarianceMatrix& v) {
  return CovarianceMatrix::from_matrix(congruence(mirror(), v.matrix()), 0.0);
}

MarginCheck ppt_psd(const CovarianceMatrix& v, double tol) {
  return psd_check(mirror_reflect(v).matrix(), omega() * 0.5, tol);
}

MarginCheck ppt_psd_tilde(const CovarianceMatrix& v, double tol) {
  return psd_check(v.matrix(), omega_tilde() * 0.5, tol);
}

ResidualCheck ppt_invariant(const CovarianceMatrix& v, double tol) {
  const Invariants inv = invariants(v);
  const double residual = uncertainty_residual(inv, std::abs(inv.i3));
  const bool ok = residual >= -tol * v.scale() && cone_guards(v, inv, inv.i3, tol) &&
                  cone_guards(v, inv, -inv.i3, tol);
  return {ok, residual};
}

CovarianceMatrix transform(const CovarianceMatrix& v, const SymplecticMatrix& s, double tol) {
  if (!s.verified() && !is_symplectic(s.matrix(), tol))
    throw Error(ErrorCode::NotSymplectic, "transform requires a symplectic matrix");
  const Mat4 out = congruence(s.matrix(), v.matrix());
  return CovarianceMatrix::from_matrix((out + out.transpose()) * 0.5, 0.0);
}

CovarianceMatrix transform(const CovarianceMatrix& v, const LocalSymplectic& l, double tol) {
  return transform(v, embed_local(l, tol), tol);
}

Mat4 StandardForm::matrix() const {
  Mat4 m;
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = c1;
  m(1, 3) = m(3, 1) = c2;
  return m;
}

namespace {

// S with S X Sᵀ = √(det X)·I and det S = 1.
Mat2 normalizer(const Mat2& x, double tol) {
  const double det = determinant(x);
  return spd_inverse_sqrt(x, tol) * std::pow(det, 0.25);
}

}  // namespace

StandardForm to_standard_form(const CovarianceMatrix& v, double tol) {
  const Mat2 a = v.a();
  const Mat2 b = v.b();
  if (!positive_block(a) || !positive_block(b))
    throw Error(ErrorCode::NotPositive, "diagonal blocks must be positive definite");

  Mat2 s1;
  Mat2 s2;
  try {
    s1 = normalizer(a, tol);
    s2 = normalizer(b, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotPositive, e.what());
  }
  const Mat2 m = s1 * v.c() * s2.transpose();

  // Rotation-only SVD: m = R(φ) diag(sx, sy) R(θ), R(t) the counterclockwise
  // rotation. sx ≥ |sy| and sx·sy = det m.
  const double e = 0.5 * (m(0, 0) + m(1, 1));
  const double f = 0.5 * (m(0, 0) - m(1, 1));
  const double g = 0.5 * (m(1, 0) + m(0, 1));
  const double h = 0.5 * (m(1, 0) - m(0, 1));
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double sx = q + r;
  double sy = q - r;
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  if (std::abs(sy) <= tol * v.scale()) sy = 0.0;

  StandardForm sf{};
  sf.a = std::sqrt(determinant(a));
  sf.b = std::sqrt(determinant(b));
  sf.c1 = sx;
  sf.c2 = sy;
  // rotation2(t) is the clockwise rotation R(-t).
  sf.to_standard.alice = rotation2(phi) * s1;
  sf.to_standard.bob = rotation2(-theta) * s2;
  return sf;
}

double standard_form_error(const CovarianceMatrix& v, const StandardForm& sf) {
  const Mat4 l = block_diag(sf.to_standard.alice, sf.to_standard.bob);
  return (congruence(l, v.matrix()) - sf.matrix()).max_abs();
}

StandardInequalities standard_inequalities(const StandardForm& sf) {
  const double ab = sf.a * sf.b;
  const double lhs = 4.0 * (ab - sf.c1 * sf.c1) * (ab - sf.c2 * sf.c2);
  const double base = lhs - (sf.a * sf.a + sf.b * sf.b) + 0.25;
  const double cc = sf.c1 * sf.c2;
  return {base - 2.0 * cc, base - 2.0 * std::abs(cc)};
}

UncertaintySum uncertainty_sum(const CovarianceMatrix& v, const Vec4& d, const Vec4& dp) {
  UncertaintySum u{};
  u.sum = bilinear(d, v.matrix(), d) + bilinear(dp, v.matrix(), dp);
  u.omega_bound = std::abs(bilinear(dp, omega(), d));
  u.omega_tilde_bound = std::abs(bilinear(dp, omega_tilde(), d));
  u.separable_bound =
      std::abs(d[0] * dp[1] - d[1] * dp[0]) + std::abs(d[2] * dp[3] - d[3] * dp[2]);
  return u;
}

}  // namespace gaussep
