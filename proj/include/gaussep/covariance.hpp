#pragma once

// Two-mode covariance matrices V = [[A, C], [Cᵀ, B]] in units ħ = 1 where the
// vacuum is ½I. Physicality is V + (i/2)Ω ⪰ 0; the partial transpose acts as
// the mirror reflection V -> ΛVΛ.

#include "gaussep/matcore.hpp"
#include "gaussep/symplectic.hpp"

namespace gaussep {

class CovarianceMatrix {
 public:
  /// Symmetrizes raw if its asymmetry is within tol·scale, else throws
  /// NotSymmetric. Throws NonFinite on NaN/Inf.
  static CovarianceMatrix from_matrix(const Mat4& raw, double tol = kDefaultTol);

  const Mat4& matrix() const { return v_; }
  Mat2 a() const { return block(v_, 0, 0); }
  Mat2 b() const { return block(v_, 1, 1); }
  Mat2 c() const { return block(v_, 0, 1); }
  double scale() const { return problem_scale(v_); }
  double operator()(std::size_t i, std::size_t j) const { return v_(i, j); }

  friend bool operator==(const CovarianceMatrix& l, const CovarianceMatrix& r) {
    return l.v_ == r.v_;
  }

 private:
  explicit CovarianceMatrix(const Mat4& v) : v_(v) {}
  Mat4 v_;
};

/// Local Sp(2,R) ⊗ Sp(2,R) invariants plus det V.
struct Invariants {
  double i1;    // det A
  double i2;    // det B
  double i3;    // det C
  double i4;    // tr(A J C J B J Cᵀ J)
  double detv;  // det V = i1·i2 + i3² − i4
};

Invariants invariants(const CovarianceMatrix& v);

struct MarginCheck {
  bool ok;
  double margin;  // smallest eigenvalue of the Hermitian form
};

struct ResidualCheck {
  bool ok;
  double residual;
};

/// V + (i/2)Ω ⪰ 0.
MarginCheck is_physical_psd(const CovarianceMatrix& v, double tol = kDefaultTol);

/// Invariant form of the uncertainty principle. The residual is
///   I₁I₂ + (¼ − I₃)² − I₄ − ¼(I₁ + I₂).
/// A scalar residual cannot describe the PSD cone on its own: the verdict also
/// requires V > 0, det A ≥ ¼, det B ≥ ¼ and I₁ + I₂ + 2I₃ ≥ ½ (the last one
/// rules out both symplectic eigenvalues lying below ½).
ResidualCheck is_physical_invariant(const CovarianceMatrix& v, double tol = kDefaultTol);

/// ΛVΛ
CovarianceMatrix mirror_reflect(const CovarianceMatrix& v);

/// ΛVΛ + (i/2)Ω ⪰ 0.
MarginCheck ppt_psd(const CovarianceMatrix& v, double tol = kDefaultTol);
/// The congruent restatement V + (i/2)Ω̃ ⪰ 0.
MarginCheck ppt_psd_tilde(const CovarianceMatrix& v, double tol = kDefaultTol);

/// Residual I₁I₂ + (¼ − |I₃|)² − I₄ − ¼(I₁ + I₂); invariant under local
/// symplectics and under mirror reflection.
ResidualCheck ppt_invariant(const CovarianceMatrix& v, double tol = kDefaultTol);

/// S V Sᵀ. Throws NotSymplectic unless S passes the membership test.
CovarianceMatrix transform(const CovarianceMatrix& v, const SymplecticMatrix& s,
                           double tol = 1e-10);
CovarianceMatrix transform(const CovarianceMatrix& v, const LocalSymplectic& l,
                           double tol = 1e-10);

/// V₀ = [[a,0,c1,0],[0,a,0,c2],[c1,0,b,0],[0,c2,0,b]] together with the local
/// element taking V to it.
struct StandardForm {
  double a;
  double b;
  double c1;
  double c2;
  LocalSymplectic to_standard;

  Mat4 matrix() const;
};

/// Local reduction: A, B are brought to scalar form by (det)^{1/4}·X^{-1/2},
/// then a rotation-only SVD diagonalizes the cross block. Yields c1 ≥ |c2| and
/// sign(c1·c2) = sign(det C); c2 is exactly 0 when the second singular value is
/// at most tol·scale. Throws NotPositive unless A and B are positive definite.
StandardForm to_standard_form(const CovarianceMatrix& v, double tol = kDefaultTol);

/// ‖L V Lᵀ − V₀‖ for the element stored in sf.
double standard_form_error(const CovarianceMatrix& v, const StandardForm& sf);

struct StandardInequalities {
  double physical_residual;  // 4(ab − c1²)(ab − c2²) − (a² + b²) − 2c1c2 + ¼
  double ppt_residual;       // 4(ab − c1²)(ab − c2²) − (a² + b²) − 2|c1c2| + ¼
};

/// Standard-form restatement of the two invariant inequalities. Each residual
/// is exactly 4× the corresponding invariant residual.
StandardInequalities standard_inequalities(const StandardForm& sf);
inline constexpr double kStandardResidualFactor = 4.0;

struct UncertaintySum {
  double sum;                // dᵀVd + d'ᵀVd'
  double omega_bound;        // |d'ᵀΩd|
  double omega_tilde_bound;  // |d'ᵀΩ̃d|
  double separable_bound;    // |d1d'2 − d2d'1| + |d3d'4 − d4d'3|
};

UncertaintySum uncertainty_sum(const CovarianceMatrix& v, const Vec4& d, const Vec4& dp);

}  // namespace gaussep
