#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gaussep/matcore.hpp"
#include "gaussep/states.hpp"
#include "gaussep/symplectic.hpp"
#include "oracles.hpp"

using namespace gaussep;

namespace {

Mat4 random_symmetric(std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

}  // namespace

TEST(Matcore, ConstructorRejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((Mat2{{1.0, nan}, {0.0, 1.0}}), Error);
  EXPECT_THROW(Mat4::diagonal({1.0, INFINITY, 1.0, 1.0}), Error);
}

TEST(Matcore, DeterminantExamples) {
  EXPECT_DOUBLE_EQ(determinant(Mat4::identity()), 1.0);
  EXPECT_DOUBLE_EQ(determinant(symplectic_j()), 1.0);
  for (double r : {0.0, 0.3, 1.0, 2.0}) {
    const Mat4 v = two_mode_squeezed(r).cov.matrix();
    EXPECT_NEAR(determinant(v), 1.0 / 16.0, 1e-12 * std::cosh(2 * r) * std::cosh(2 * r));
    EXPECT_NEAR(oracle::leibniz_det(v), 1.0 / 16.0, 1e-10 * std::pow(std::cosh(2 * r), 4));
  }
}

TEST(Matcore, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = u(rng);
    EXPECT_NEAR(determinant(m), oracle::leibniz_det(m), 1e-11 * 81.0);
  }
}

TEST(Matcore, InverseExamples) {
  EXPECT_EQ(inverse(Mat4::identity()), Mat4::identity());
  EXPECT_EQ(inverse(Mat4::identity() * 2.0), Mat4::identity() * 0.5);
  EXPECT_EQ(inverse(Mat4::identity() * 0.5), Mat4::identity() * 2.0);
  EXPECT_THROW(inverse(Mat4{}), Error);
  EXPECT_THROW(inverse(Mat2{{1.0, 2.0}, {2.0, 4.0}}), Error);
}

TEST(Matcore, InverseResidual) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Mat4 m = random_symmetric(rng) + Mat4::identity() * 5.0;
    EXPECT_LE((m * inverse(m) - Mat4::identity()).max_abs(), 1e-12 * 100.0);
  }
}

TEST(Matcore, SymEigenExamples) {
  const SymEigen<4> d = sym_eigen(Mat4::diagonal({3.0, 1.0, 4.0, 2.0}));
  EXPECT_EQ(d.values, (Vec4{1.0, 2.0, 3.0, 4.0}));
  const SymEigen<4> vac = sym_eigen(Mat4::identity() * 0.5);
  for (double x : vac.values) EXPECT_DOUBLE_EQ(x, 0.5);

  // TMSV: [[a, c], [c, a]] blocks in the q and p planes give a ± c = ½e^{±2r}.
  const double r = 0.7;
  const SymEigen<4> t = sym_eigen(oracle::tmsv_closed_form(r));
  const double lo = 0.5 * std::exp(-2 * r);
  const double hi = 0.5 * std::exp(2 * r);
  EXPECT_NEAR(t.values[0], lo, 1e-13);
  EXPECT_NEAR(t.values[1], lo, 1e-13);
  EXPECT_NEAR(t.values[2], hi, 1e-13);
  EXPECT_NEAR(t.values[3], hi, 1e-13);

  Mat4 skew = Mat4::identity();
  skew(0, 1) = 0.1;
  EXPECT_THROW(sym_eigen(skew), Error);
}

TEST(Matcore, SymEigenReconstructionProperty) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const Mat4 m = random_symmetric(rng, 5.0);
    const SymEigen<4> e = sym_eigen(m);
    const Mat4& q = e.vectors;
    EXPECT_LE((q * Mat4::diagonal(e.values) * q.transpose() - m).max_abs(),
              1e-9 * m.max_abs());
    EXPECT_LE((q.transpose() * q - Mat4::identity()).max_abs(), 1e-12);
    for (std::size_t c = 0; c < 4; ++c) {
      Vec4 v{q(0, c), q(1, c), q(2, c), q(3, c)};
      const Vec4 mv = m * v;
      for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(mv[i], e.values[c] * v[i], 1e-10 * m.frobenius());
    }
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST(Matcore, HermitianPsdExamples) {
  const Mat4 half_omega = omega() * 0.5;
  const PsdResult vac = is_psd_hermitian(HermitianPair(Mat4::identity() * 0.5, half_omega));
  EXPECT_TRUE(vac.psd);
  EXPECT_NEAR(vac.min_eig, 0.0, 1e-15);

  // Eigenvalues of v·I + (i/2)Ω are v ± ½.
  const PsdResult low = is_psd_hermitian(HermitianPair(Mat4::identity() * 0.4, half_omega));
  EXPECT_FALSE(low.psd);
  EXPECT_NEAR(low.min_eig, -0.1, 1e-15);
  const PsdResult high = is_psd_hermitian(HermitianPair(Mat4::identity(), half_omega));
  EXPECT_TRUE(high.psd);
  EXPECT_NEAR(high.min_eig, 0.5, 1e-15);
}

TEST(Matcore, HermitianPairValidation) {
  Mat4 bad_re = Mat4::identity();
  bad_re(0, 1) = 1.0;
  EXPECT_THROW(HermitianPair(bad_re, Mat4{}), Error);
  EXPECT_THROW(HermitianPair(Mat4::identity(), Mat4::identity()), Error);
}

TEST(Matcore, HermitianPsdAgreesWithEmbeddingSpectrum) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int agree = 0;
  for (int k = 0; k < 10000; ++k) {
    Mat4 re = random_symmetric(rng, 1.0) + Mat4::identity() * 1.2;
    Mat4 im;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        im(i, j) = u(rng);
        im(j, i) = -im(i, j);
      }
    const HermitianPair h(re, im);
    const PsdResult r = is_psd_hermitian(h, 0.0);
    const SymEigen<8> e = sym_eigen(h.real_embedding());
    agree += (r.psd == (e.values[0] >= 0.0));
    // Each eigenvalue of the Hermitian matrix appears twice in the embedding.
    for (std::size_t i = 0; i < 8; i += 2) EXPECT_NEAR(e.values[i], e.values[i + 1], 1e-10);
  }
  EXPECT_EQ(agree, 10000);
}

TEST(Matcore, SpdInverseSqrtExamples) {
  EXPECT_EQ(spd_inverse_sqrt(Mat2::identity()), Mat2::identity());
  const Mat2 p = spd_inverse_sqrt(Mat2::diagonal({4.0, 1.0}));
  EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);

  const Mat2 m{{2.0, 1.0}, {1.0, 2.0}};
  const Mat2 q = spd_inverse_sqrt(m);
  EXPECT_LE((q * m * q - Mat2::identity()).max_abs(), 1e-11);
  // Eigenvalues 1 and 3 map to 1 and 1/√3.
  const SymEigen<2> e = sym_eigen(q);
  EXPECT_NEAR(e.values[0], 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  EXPECT_THROW(spd_inverse_sqrt(Mat2::diagonal({1.0, -1.0})), Error);
}

TEST(Matcore, SpdInverseSqrtCommutesProperty) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    Mat2 g{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const Mat2 m = g * g.transpose() + Mat2::identity() * 0.1;
    const Mat2 p = spd_inverse_sqrt(m);
    EXPECT_EQ(p(0, 1), p(1, 0));
    EXPECT_LE((p * m - m * p).max_abs(), 1e-10);
    EXPECT_LE((p * m * p - Mat2::identity()).max_abs(), 1e-11);
  }
}

TEST(Matcore, SymplecticMatricesHaveUnitDeterminant) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const SymplecticMatrix s = random_symplectic(seed);
    ASSERT_TRUE(is_symplectic(s.matrix()));
    EXPECT_NEAR(determinant(s.matrix()), 1.0, 1e-10);
  }
}
