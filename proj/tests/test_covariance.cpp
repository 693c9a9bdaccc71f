#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gaussep/covariance.hpp"
#include "gaussep/sampling.hpp"
#include "gaussep/states.hpp"
#include "oracles.hpp"

using namespace gaussep;

namespace {

CovarianceMatrix cov(const Mat4& m) { return CovarianceMatrix::from_matrix(m); }

CovarianceMatrix standard(double a, double b, double c1, double c2) {
  return cov(StandardForm{a, b, c1, c2, {}}.matrix());
}

// ν² from the symmetric matrix V^{1/2} Ωᵀ V Ω V^{1/2}, which shares its
// spectrum with −(ΩV)².
std::array<double, 2> symplectic_squares(const Mat4& v) {
  const SymEigen<4> e = sym_eigen(v);
  Vec4 root{};
  for (std::size_t k = 0; k < 4; ++k) root[k] = std::sqrt(e.values[k]);
  const Mat4 half = e.vectors * Mat4::diagonal(root) * e.vectors.transpose();
  Mat4 m = half * omega().transpose() * v * omega() * half;
  m = (m + m.transpose()) * 0.5;
  const SymEigen<4> s = sym_eigen(m);
  return {0.5 * (s.values[0] + s.values[1]), 0.5 * (s.values[2] + s.values[3])};
}

}  // namespace

TEST(Covariance, FromMatrix) {
  const CovarianceMatrix v = cov(Mat4::identity() * 0.5);
  EXPECT_EQ(v.a(), Mat2::identity() * 0.5);
  EXPECT_EQ(v.b(), Mat2::identity() * 0.5);
  EXPECT_EQ(v.c(), Mat2{});

  Mat4 raw = Mat4::identity();
  raw(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix::from_matrix(raw, 1e-9), Error);
  raw(0, 1) = 1e-12;
  const CovarianceMatrix sym = CovarianceMatrix::from_matrix(raw, 1e-9);
  EXPECT_EQ(sym(0, 1), sym(1, 0));
  raw(0, 1) = NAN;
  EXPECT_THROW(CovarianceMatrix::from_matrix(raw), Error);

  const double r = 0.4;
  const CovarianceMatrix t = cov(oracle::tmsv_closed_form(r));
  EXPECT_EQ(t.c(), sigma3() * (0.5 * std::sinh(2 * r)));
}

TEST(Covariance, InvariantsVacuum) {
  const Invariants inv = invariants(vacuum().cov);
  EXPECT_DOUBLE_EQ(inv.i1, 0.25);
  EXPECT_DOUBLE_EQ(inv.i2, 0.25);
  EXPECT_DOUBLE_EQ(inv.i3, 0.0);
  EXPECT_DOUBLE_EQ(inv.i4, 0.0);
  EXPECT_DOUBLE_EQ(inv.detv, 1.0 / 16.0);
}

TEST(Covariance, InvariantsTwoModeSqueezed) {
  for (double r : {0.1, 0.5, 1.3}) {
    const Invariants inv = invariants(cov(oracle::tmsv_closed_form(r)));
    const double a = 0.5 * std::cosh(2 * r);
    const double c = 0.5 * std::sinh(2 * r);
    EXPECT_NEAR(inv.i1, a * a, 1e-14 * a * a);
    EXPECT_NEAR(inv.i2, a * a, 1e-14 * a * a);
    EXPECT_NEAR(inv.i3, -c * c, 1e-14 * a * a);
    EXPECT_NEAR(inv.i4, 2 * a * a * c * c, 1e-13 * a * a * a * a);
    EXPECT_NEAR(inv.detv, inv.i1 * inv.i2 + inv.i3 * inv.i3 - inv.i4, 1e-10 * a * a);
  }
}

TEST(Covariance, DetIdentityAndLocalInvariance) {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const CovarianceMatrix v = sample_physical(k);
    const Invariants a = invariants(v);
    EXPECT_LE(std::abs(a.detv - (a.i1 * a.i2 + a.i3 * a.i3 - a.i4)), 1e-10 * v.scale());
    const Invariants b = invariants(transform(v, random_local(k + 5000)));
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); };
    EXPECT_LE(rel(b.i1, a.i1), 1e-8);
    EXPECT_LE(rel(b.i2, a.i2), 1e-8);
    EXPECT_LE(rel(b.i3, a.i3), 1e-8);
    EXPECT_LE(rel(b.i4, a.i4), 1e-8);
  }
}

TEST(Covariance, PhysicalPsdExamples) {
  const MarginCheck vac = is_physical_psd(vacuum().cov);
  EXPECT_TRUE(vac.ok);
  EXPECT_NEAR(vac.margin, 0.0, 1e-15);
  const MarginCheck low = is_physical_psd(cov(Mat4::identity() * 0.4));
  EXPECT_FALSE(low.ok);
  EXPECT_NEAR(low.margin, -0.1, 1e-15);
  const MarginCheck hot = is_physical_psd(cov(Mat4::identity()));
  EXPECT_TRUE(hot.ok);
  EXPECT_NEAR(hot.margin, 0.5, 1e-15);
}

TEST(Covariance, PhysicalInvariantExamples) {
  const ResidualCheck vac = is_physical_invariant(vacuum().cov);
  EXPECT_TRUE(vac.ok);
  EXPECT_DOUBLE_EQ(vac.residual, 0.0);
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const CovarianceMatrix t = two_mode_squeezed(r).cov;
    EXPECT_NEAR(is_physical_invariant(t).residual, 0.0, 1e-9 * t.scale());
    EXPECT_TRUE(is_physical_invariant(t).ok);
  }
  // 0.16² + 1/16 − ½·0.16 = 0.0081 > 0: the scalar residual alone accepts 0.4·I,
  // the det A ≥ ¼ block condition rejects it.
  const ResidualCheck low = is_physical_invariant(cov(Mat4::identity() * 0.4));
  EXPECT_NEAR(low.residual, 0.0081, 1e-15);
  EXPECT_FALSE(low.ok);
}

TEST(Covariance, ScalarResidualCounterexamples) {
  // Both symplectic eigenvalues below ½: residual (ν₊² − ¼)(ν₋² − ¼) > 0 with
  // det A, det B ≥ ¼ and V > 0.
  const CovarianceMatrix shrunk = cov(oracle::tmsv_closed_form(1.0) * 0.9);
  const Invariants inv = invariants(shrunk);
  EXPECT_GT(is_physical_invariant(shrunk).residual, 0.0);
  EXPECT_GE(inv.i1, 0.25);
  EXPECT_TRUE(is_positive_definite(shrunk.matrix()));
  EXPECT_FALSE(is_physical_psd(shrunk).ok);
  EXPECT_FALSE(is_physical_invariant(shrunk).ok);

  // Indefinite V with positive blocks.
  const Mat2 i2 = Mat2::identity();
  const CovarianceMatrix indefinite = cov(from_blocks(i2, i2 * 2.0, i2 * 2.0, i2));
  EXPECT_GT(is_physical_invariant(indefinite).residual, 0.0);
  EXPECT_FALSE(is_physical_psd(indefinite).ok);
  EXPECT_FALSE(is_physical_invariant(indefinite).ok);

  // Negated physical matrix: identical invariants.
  const CovarianceMatrix negated = cov(-oracle::tmsv_closed_form(0.3) * 2.0);
  EXPECT_FALSE(is_physical_invariant(negated).ok);
}

TEST(Covariance, ResidualFactorsThroughSymplecticSpectrum) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const CovarianceMatrix v = sample_physical(k + 77);
    const auto nu2 = symplectic_squares(v.matrix());
    const double expected = (nu2[0] - 0.25) * (nu2[1] - 0.25);
    EXPECT_NEAR(is_physical_invariant(v).residual, expected,
                1e-9 * std::pow(v.scale(), 4));
  }
}

TEST(Covariance, MirrorReflect) {
  EXPECT_EQ(mirror_reflect(vacuum().cov), vacuum().cov);
  const double r = 0.6;
  const CovarianceMatrix t = cov(oracle::tmsv_closed_form(r));
  const CovarianceMatrix m = mirror_reflect(t);
  EXPECT_EQ(m.c(), Mat2::identity() * (0.5 * std::sinh(2 * r)));
  EXPECT_NEAR(invariants(m).i3, -invariants(t).i3, 1e-15);
  EXPECT_NEAR(invariants(t).i3, -0.25 * std::pow(std::sinh(2 * r), 2), 1e-14);

  for (std::uint64_t k = 0; k < 200; ++k) {
    const CovarianceMatrix v = sample_mixed(3, k);
    EXPECT_EQ(mirror_reflect(mirror_reflect(v)), v);
    const Invariants a = invariants(v);
    const Invariants b = invariants(mirror_reflect(v));
    EXPECT_EQ(b.i1, a.i1);
    EXPECT_EQ(b.i3, -a.i3);
    EXPECT_NEAR(b.i2, a.i2, 1e-15 * std::max(1.0, std::abs(a.i2)));
    EXPECT_NEAR(b.i4, a.i4, 1e-13 * std::max(1.0, std::abs(a.i4)));
  }
}

TEST(Covariance, PptPsd) {
  EXPECT_TRUE(ppt_psd(vacuum().cov).ok);
  EXPECT_FALSE(ppt_psd(two_mode_squeezed(1.0).cov).ok);
  // C = 0: the mirror acts as a local σ₃ congruence on B.
  for (double s : {0.4, 0.5, 0.8}) {
    const CovarianceMatrix v = cov(block_diag(Mat2::diagonal({s, 1.0}), Mat2::diagonal({2.0, s})));
    EXPECT_EQ(ppt_psd(v).ok, is_physical_psd(v).ok);
  }
  for (std::uint64_t k = 0; k < 500; ++k) {
    const CovarianceMatrix v = sample_mixed(9, k);
    EXPECT_EQ(ppt_psd(v).ok, ppt_psd_tilde(v).ok);
    EXPECT_NEAR(ppt_psd(v).margin, ppt_psd_tilde(v).margin, 1e-12 * v.scale());
  }
}

TEST(Covariance, PptInvariant) {
  for (double r : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    const CovarianceMatrix t = two_mode_squeezed(r).cov;
    const double expected = -0.25 * std::pow(std::sinh(2 * r), 2);
    EXPECT_NEAR(ppt_invariant(t).residual, expected, 1e-9 * std::abs(expected));
    EXPECT_FALSE(ppt_invariant(t).ok);
  }
  EXPECT_DOUBLE_EQ(ppt_invariant(vacuum().cov).residual, 0.0);
  const CovarianceMatrix v = standard(1, 1, 0.5, 0.5);
  EXPECT_EQ(ppt_invariant(v).residual, is_physical_invariant(v).residual);
}

TEST(Covariance, SubsumptionForNonnegativeDetC) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const CovarianceMatrix v = sample_nonnegative_det_c(k);
    ASSERT_TRUE(is_physical_invariant(v).ok);
    EXPECT_TRUE(ppt_invariant(v).ok);
  }
}

TEST(Covariance, Transform) {
  const CovarianceMatrix v = sample_physical(4);
  EXPECT_EQ(transform(v, SymplecticMatrix::checked(Mat4::identity())), v);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CovarianceMatrix w = transform(vacuum().cov, random_symplectic(seed));
    EXPECT_NEAR(determinant(w.matrix()), 1.0 / 16.0, 1e-12 * std::pow(w.scale(), 2));
    EXPECT_TRUE(is_physical_psd(w).ok);
  }
  const double r = 0.45;
  EXPECT_LE((transform(vacuum().cov, two_mode_squeeze_matrix(r)).matrix() -
             oracle::tmsv_closed_form(r)).max_abs(),
            1e-15);
  EXPECT_THROW(transform(v, SymplecticMatrix::unchecked(mirror())), Error);
}

TEST(Covariance, StandardFormExamples) {
  const StandardForm vac = to_standard_form(vacuum().cov);
  EXPECT_DOUBLE_EQ(vac.a, 0.5);
  EXPECT_DOUBLE_EQ(vac.b, 0.5);
  EXPECT_EQ(vac.c1, 0.0);
  EXPECT_EQ(vac.c2, 0.0);
  for (const Mat2& m : {vac.to_standard.alice, vac.to_standard.bob})
    EXPECT_LE((m * m.transpose() - Mat2::identity()).max_abs(), 1e-15);  // rotations only

  const StandardForm same = to_standard_form(standard(1.0, 0.8, 0.3, -0.2));
  EXPECT_NEAR(same.a, 1.0, 1e-15);
  EXPECT_NEAR(same.b, 0.8, 1e-15);
  EXPECT_NEAR(same.c1, 0.3, 1e-15);
  EXPECT_NEAR(same.c2, -0.2, 1e-15);
  for (const Mat2& m : {same.to_standard.alice, same.to_standard.bob})
    EXPECT_NEAR(std::abs(m(0, 0)), 1.0, 1e-15);

  const double r = 0.5;
  const StandardForm t = to_standard_form(two_mode_squeezed(r).cov);
  EXPECT_NEAR(t.a, 0.5 * std::cosh(1.0), 1e-15);
  EXPECT_NEAR(t.c1, 0.5 * std::sinh(1.0), 1e-15);
  EXPECT_NEAR(t.c2, -0.5 * std::sinh(1.0), 1e-15);

  EXPECT_THROW(to_standard_form(cov(-Mat4::identity())), Error);
}

TEST(Covariance, StandardFormRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t k = 0; k < 500; ++k) {
    const double a = 0.5 + 2.0 * u(rng);
    const double b = 0.5 + 2.0 * u(rng);
    const double c1 = 0.5 * std::min(a, b) * u(rng);
    const double c2 = c1 * (2.0 * u(rng) - 1.0);
    const CovarianceMatrix v0 = standard(a, b, c1, c2);
    const CovarianceMatrix v = transform(v0, random_local(k));
    const StandardForm sf = to_standard_form(v);
    EXPECT_NEAR(sf.a, a, 1e-8);
    EXPECT_NEAR(sf.b, b, 1e-8);
    EXPECT_NEAR(sf.c1, c1, 1e-8);
    EXPECT_NEAR(sf.c2, c2, 1e-8);
    EXPECT_LE(standard_form_error(v, sf), 1e-9 * v.scale());
    EXPECT_TRUE(is_symplectic(sf.to_standard.alice));
    EXPECT_TRUE(is_symplectic(sf.to_standard.bob));
  }
}

TEST(Covariance, StandardFormDegenerateCrossBlock) {
  Mat4 m = StandardForm{1.0, 0.8, 0.5, 0.0, {}}.matrix();
  const CovarianceMatrix v = transform(cov(m), random_local(8));
  const StandardForm sf = to_standard_form(v);
  EXPECT_EQ(sf.c2, 0.0);
  EXPECT_NEAR(sf.c1, 0.5, 1e-9);
}

TEST(Covariance, StandardInequalities) {
  const StandardInequalities vac = standard_inequalities({0.5, 0.5, 0.0, 0.0, {}});
  EXPECT_DOUBLE_EQ(vac.ppt_residual, 0.0);

  const double r = 0.5;
  const double a = 0.5 * std::cosh(2 * r);
  const double c = 0.5 * std::sinh(2 * r);
  const double s = std::sinh(2 * r) * std::sinh(2 * r);
  const StandardInequalities t = standard_inequalities({a, a, c, -c, {}});
  EXPECT_NEAR(t.ppt_residual, kStandardResidualFactor * (-0.25 * s), 1e-13);
  EXPECT_NEAR(t.physical_residual, 0.0, 1e-13);

  const StandardInequalities bad = standard_inequalities({1.0, 1.0, 0.9, 0.9, {}});
  EXPECT_NEAR(bad.physical_residual, 4 * 0.19 * 0.19 - (2 + 1.62 - 0.25), 1e-14);
  EXPECT_LT(bad.physical_residual, 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const StandardForm sf{1.0 + u(rng) * 0.5, 1.0 + u(rng) * 0.5, u(rng), u(rng), {}};
    const CovarianceMatrix v = cov(sf.matrix());
    const StandardInequalities si = standard_inequalities(sf);
    EXPECT_NEAR(si.physical_residual, kStandardResidualFactor * is_physical_invariant(v).residual,
                1e-12);
    EXPECT_NEAR(si.ppt_residual, kStandardResidualFactor * ppt_invariant(v).residual, 1e-12);
  }
}

TEST(Covariance, UncertaintySumExamples) {
  const UncertaintySum vac = uncertainty_sum(vacuum().cov, {1, 1, 1, 1}, {1, -1, -1, 1});
  EXPECT_DOUBLE_EQ(vac.sum, 4.0);
  EXPECT_DOUBLE_EQ(vac.separable_bound, 4.0);
  EXPECT_DOUBLE_EQ(vac.omega_bound, 0.0);
  EXPECT_DOUBLE_EQ(vac.omega_tilde_bound, 4.0);

  const double r = 0.8;
  const UncertaintySum epr = uncertainty_sum(two_mode_squeezed(r).cov, {1, 0, -1, 0}, {0, 1, 0, 1});
  EXPECT_NEAR(epr.sum, 2.0 * std::exp(-2 * r), 1e-14);
  EXPECT_DOUBLE_EQ(epr.separable_bound, 2.0);
  EXPECT_DOUBLE_EQ(epr.omega_bound, 0.0);

  const CovarianceMatrix v = sample_physical(12);
  const UncertaintySum deg = uncertainty_sum(v, {1, 0, 0, 0}, {1, 0, 0, 0});
  EXPECT_EQ(deg.omega_bound, 0.0);
  EXPECT_EQ(deg.separable_bound, 0.0);
  EXPECT_DOUBLE_EQ(deg.sum, 2.0 * v(0, 0));
}

TEST(Covariance, UncertaintyBoundProperty) {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> n(0.0, 1.0);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const CovarianceMatrix v = sample_physical(k + 900);
    for (int t = 0; t < 100; ++t) {
      Vec4 d{}, dp{};
      for (double& x : d) x = n(rng);
      for (double& x : dp) x = n(rng);
      const UncertaintySum u = uncertainty_sum(v, d, dp);
      EXPECT_GE(u.sum, u.omega_bound - 1e-9);
    }
  }
}
