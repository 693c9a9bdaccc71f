#include "gaussep/matcore.hpp"

#include <utility>

namespace gaussep {

Mat2 block(const Mat4& m, std::size_t bi, std::size_t bj) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * bi + i, 2 * bj + j);
  return out;
}

Mat4 from_blocks(const Mat2& a, const Mat2& c, const Mat2& ct, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = a(i, j);
      m(i, j + 2) = c(i, j);
      m(i + 2, j) = ct(i, j);
      m(i + 2, j + 2) = b(i, j);
    }
  return m;
}

Mat4 block_diag(const Mat2& a, const Mat2& b) { return from_blocks(a, Mat2{}, Mat2{}, b); }

double determinant(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double determinant(const Mat4& m) {
  Mat4 lu = m;
  double det = 1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < 4; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < 4; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < 4; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < 4; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

Mat2 inverse(const Mat2& m, double tol) {
  const double det = determinant(m);
  if (!(std::abs(det) > tol * problem_scale(m)))
    throw Error(ErrorCode::Singular, "2x2 matrix is singular");
  return Mat2{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
}

Mat4 inverse(const Mat4& m, double tol) {
  if (!(std::abs(determinant(m)) > tol * problem_scale(m)))
    throw Error(ErrorCode::Singular, "4x4 matrix is singular");
  // Gauss-Jordan with partial pivoting.
  Mat4 a = m;
  Mat4 inv = Mat4::identity();
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < 4; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    for (std::size_t j = 0; j < 4; ++j) {
      std::swap(a(k, j), a(piv, j));
      std::swap(inv(k, j), inv(piv, j));
    }
    const double d = a(k, k);
    for (std::size_t j = 0; j < 4; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool is_positive_definite(const Mat4& m) {
  Mat4 l;
  for (std::size_t j = 0; j < 4; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < 4; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

HermitianPair::HermitianPair(const Mat4& re, const Mat4& im, double tol) : re_(re), im_(im) {
  re.require_finite();
  im.require_finite();
  const double scale = std::max(problem_scale(re), problem_scale(im));
  if (asymmetry(re) > tol * scale)
    throw Error(ErrorCode::MalformedHermitian, "real part is not symmetric");
  if ((im + im.transpose()).max_abs() > tol * scale)
    throw Error(ErrorCode::MalformedHermitian, "imaginary part is not antisymmetric");
}

Mat8 HermitianPair::real_embedding() const {
  Mat8 e;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      e(i, j) = re_(i, j);
      e(i, j + 4) = -im_(i, j);
      e(i + 4, j) = im_(i, j);
      e(i + 4, j + 4) = re_(i, j);
    }
  return e;
}

PsdResult is_psd_hermitian(const HermitianPair& h, double tol) {
  const Mat8 e = h.real_embedding();
  const double min_eig = detail::jacobi_eigen(e).values[0];
  return {min_eig >= -tol * problem_scale(e), min_eig};
}

Mat2 spd_inverse_sqrt(const Mat2& m, double tol) {
  const SymEigen<2> eig = sym_eigen(m, tol);
  if (!(eig.values[0] > tol * problem_scale(m)))
    throw Error(ErrorCode::NotSPD, "matrix is not symmetric positive definite");
  const Mat2& q = eig.vectors;
  const Mat2 d = Mat2::diagonal({1.0 / std::sqrt(eig.values[0]), 1.0 / std::sqrt(eig.values[1])});
  Mat2 p = q * d * q.transpose();
  // Exact symmetry.
  const double off = 0.5 * (p(0, 1) + p(1, 0));
  p(0, 1) = off;
  p(1, 0) = off;
  return p;
}

}  // namespace gaussep
