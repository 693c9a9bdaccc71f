#pragma once

// Fixed-size dense real matrices (2x2, 4x4 and the 8x8 Hermitian embedding)
// plus the handful of factorizations the covariance machinery needs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>

#include "gaussep/error.hpp"

namespace gaussep {

inline constexpr double kDefaultTol = 1e-9;

template <std::size_t N>
using Vec = std::array<double, N>;
using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

/// Row-major N x N real matrix. Value type; default constructed to zero.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr Matrix() : a_{} {}

  /// Builds from nested rows. Throws NonFinite on NaN/Inf entries.
  Matrix(std::initializer_list<std::initializer_list<double>> rows) : a_{} {
    if (rows.size() != N) throw Error(ErrorCode::InvalidArgument, "wrong number of rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != N) throw Error(ErrorCode::InvalidArgument, "wrong number of columns");
      std::size_t j = 0;
      for (double x : row) a_[i * N + j++] = x;
      ++i;
    }
    require_finite();
  }

  static Matrix from_array(const std::array<double, N * N>& entries) {
    Matrix m;
    m.a_ = entries;
    m.require_finite();
    return m;
  }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m.a_[i * N + i] = 1.0;
    return m;
  }

  static Matrix diagonal(const Vec<N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m.a_[i * N + i] = d[i];
    m.require_finite();
    return m;
  }

  constexpr double& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

  const std::array<double, N * N>& data() const { return a_; }

  bool all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
  }

  void require_finite() const {
    if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  }

  Matrix transpose() const {
    Matrix t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  /// Largest absolute entry.
  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
  friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
  friend Matrix operator-(Matrix m) { return m *= -1.0; }
  friend Matrix operator*(Matrix m, double s) { return m *= s; }
  friend Matrix operator*(double s, Matrix m) { return m *= s; }

  friend Matrix operator*(const Matrix& l, const Matrix& r) {
    Matrix p;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double lik = l(i, k);
        for (std::size_t j = 0; j < N; ++j) p(i, j) += lik * r(k, j);
      }
    return p;
  }

  friend Vec<N> operator*(const Matrix& m, const Vec<N>& v) {
    Vec<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += m(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& l, const Matrix& r) { return l.a_ == r.a_; }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < N; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < N; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::array<double, N * N> a_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Mat8 = Matrix<8>;

/// max(1, largest absolute entry): the scale absolute tolerances are multiplied by.
template <std::size_t N>
double problem_scale(const Matrix<N>& m) {
  return std::max(1.0, m.max_abs());
}

template <std::size_t N>
double asymmetry(const Matrix<N>& m) {
  return (m - m.transpose()).max_abs();
}

template <std::size_t N>
double dot(const Vec<N>& x, const Vec<N>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
  return s;
}

/// xᵀ M y
template <std::size_t N>
double bilinear(const Vec<N>& x, const Matrix<N>& m, const Vec<N>& y) {
  return dot(x, m * y);
}

/// S M Sᵀ
template <std::size_t N>
Matrix<N> congruence(const Matrix<N>& s, const Matrix<N>& m) {
  return s * m * s.transpose();
}

// 4x4 block helpers for the (mode 1, mode 2) split.
Mat2 block(const Mat4& m, std::size_t bi, std::size_t bj);
Mat4 from_blocks(const Mat2& a, const Mat2& c, const Mat2& ct, const Mat2& b);
Mat4 block_diag(const Mat2& a, const Mat2& b);

double determinant(const Mat2& m);
/// Partial-pivot LU.
double determinant(const Mat4& m);

/// Throws Singular when |det| <= tol * scale.
Mat2 inverse(const Mat2& m, double tol = kDefaultTol);
Mat4 inverse(const Mat4& m, double tol = kDefaultTol);

/// Cholesky test for strict positive definiteness.
bool is_positive_definite(const Mat4& m);

template <std::size_t N>
struct SymEigen {
  Vec<N> values;        // ascending
  Matrix<N> vectors;    // column k is the eigenvector of values[k]
};

namespace detail {

// Cyclic Jacobi. Off-diagonal Frobenius norm driven below 1e-14 * ||M||_F,
// at most 50 sweeps.
template <std::size_t N>
SymEigen<N> jacobi_eigen(Matrix<N> a) {
  Matrix<N> v = Matrix<N>::identity();
  const double norm = a.frobenius();
  const double target = 1e-14 * norm;
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= target || off == 0.0) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return a(l, l) < a(r, r); });
  SymEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace detail

/// Symmetric eigendecomposition. Throws NotSymmetric if the input deviates
/// from symmetry by more than tol * scale.
template <std::size_t N>
SymEigen<N> sym_eigen(const Matrix<N>& m, double tol = kDefaultTol) {
  m.require_finite();
  if (asymmetry(m) > tol * problem_scale(m))
    throw Error(ErrorCode::NotSymmetric, "sym_eigen input is not symmetric");
  return detail::jacobi_eigen(m);
}

/// re + i·im with re symmetric and im antisymmetric.
class HermitianPair {
 public:
  HermitianPair(const Mat4& re, const Mat4& im, double tol = kDefaultTol);

  const Mat4& re() const { return re_; }
  const Mat4& im() const { return im_; }

  /// [[re, -im], [im, re]]; every eigenvalue of the Hermitian matrix appears twice.
  Mat8 real_embedding() const;

 private:
  Mat4 re_;
  Mat4 im_;
};

struct PsdResult {
  bool psd;
  double min_eig;
};

/// Decides re + i·im ⪰ -tol·scale via the real 8x8 embedding.
PsdResult is_psd_hermitian(const HermitianPair& h, double tol = kDefaultTol);

/// Symmetric P with P M P = I, for symmetric positive definite 2x2 M.
Mat2 spd_inverse_sqrt(const Mat2& m, double tol = kDefaultTol);

}  // namespace gaussep
