#pragma once

// Phase-space ordering is (q1, p1, q2, p2) everywhere.

#include <cstdint>

#include "gaussep/matcore.hpp"

namespace gaussep {

/// J = [[0, 1], [-1, 0]]
Mat2 symplectic_j();
/// σ₃ = diag(1, -1)
Mat2 sigma3();
/// Ω = block-diag(J, J)
Mat4 omega();
/// Λ = diag(1, 1, 1, -1): the mirror reflection p2 -> -p2.
Mat4 mirror();
/// Ω̃ = ΛΩΛ = block-diag(J, -J)
Mat4 omega_tilde();

bool is_symplectic(const Mat4& s, double tol = 1e-10);
bool is_symplectic(const Mat2& s, double tol = 1e-10);

/// Element of Sp(4,R). `verified()` is true when the membership test was run
/// at construction.
class SymplecticMatrix {
 public:
  /// Throws NotSymplectic if the membership test fails.
  static SymplecticMatrix checked(const Mat4& m, double tol = 1e-10);
  /// Trusts the caller; used for products of generators.
  static SymplecticMatrix unchecked(const Mat4& m) { return SymplecticMatrix(m, false); }

  const Mat4& matrix() const { return m_; }
  bool verified() const { return verified_; }

  SymplecticMatrix inverse() const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& l, const SymplecticMatrix& r) {
    return SymplecticMatrix(l.m_ * r.m_, false);
  }

 private:
  SymplecticMatrix(const Mat4& m, bool verified) : m_(m), verified_(verified) {}
  Mat4 m_;
  bool verified_;
};

/// S₁ ⊕ S₂ acting on Alice's (q1, p1) and Bob's (q2, p2) modes.
struct LocalSymplectic {
  Mat2 alice = Mat2::identity();
  Mat2 bob = Mat2::identity();

  /// Throws FactorNotSymplectic if either factor fails S J Sᵀ = J.
  static LocalSymplectic checked(const Mat2& alice, const Mat2& bob, double tol = 1e-10);

  /// Apply `first`, then `*this`.
  LocalSymplectic after(const LocalSymplectic& first) const {
    return {alice * first.alice, bob * first.bob};
  }
};

/// [[cos θ, sin θ], [-sin θ, cos θ]]
Mat2 rotation2(double theta);
/// diag(x, 1/x); throws NonPositiveScale for x <= 0.
Mat2 squeeze2(double x);
/// Rotates the (q1, q2) plane and the (p1, p2) plane through the same angle.
/// Orthogonal and symplectic.
SymplecticMatrix equal_rotation4(double theta);
/// Block-diagonal embedding. Throws FactorNotSymplectic.
SymplecticMatrix embed_local(const LocalSymplectic& l, double tol = 1e-10);

struct RandomSymplecticOptions {
  bool local_only = false;
  double max_log_squeeze = 1.0;
};

/// Per mode: rotation · squeeze · rotation, log-squeeze uniform in
/// [-max_log_squeeze, max_log_squeeze]. Deterministic in seed.
LocalSymplectic random_local(std::uint64_t seed, double max_log_squeeze = 1.0);

/// random_local sandwiched between two equal rotations (mixing the modes)
/// unless local_only is set, in which case it is the embedded random_local.
SymplecticMatrix random_symplectic(std::uint64_t seed, const RandomSymplecticOptions& opts = {});

}  // namespace gaussep
