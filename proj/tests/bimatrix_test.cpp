#include "cvlqr/bimatrix.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "cvlqr/errors.hpp"
#include "cvlqr/random_instances.hpp"
#include "test_util.hpp"

namespace cvlqr {
namespace {

using testing::block_embed;
using testing::max_abs;

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

TEST(Embed, IdentityAndPureAntilinear) {
  EXPECT_TRUE(embed(Bimatrix::Identity(2)).isApprox(CMatrix::Identity(4, 4)));

  const Complex a(1.5, -2.0);
  const CMatrix e = embed(Bimatrix::Antilinear(scalar(a)));
  EXPECT_EQ(e(0, 0), Complex(0.0));
  EXPECT_EQ(e(0, 1), std::conj(a));
  EXPECT_EQ(e(1, 0), a);
  EXPECT_EQ(e(1, 1), Complex(0.0));
}

TEST(Embed, RoundTrip) {
  InstanceGenerator gen(11);
  const Bimatrix x(gen.complex_matrix(3, 2), gen.complex_matrix(3, 2));
  const Bimatrix y = from_embedding(embed(x));
  EXPECT_EQ(max_abs(y.m1() - x.m1()), 0.0);
  EXPECT_EQ(max_abs(y.m2() - x.m2()), 0.0);
}

TEST(Bimatrix, ShapeMismatchThrows) {
  EXPECT_THROW(Bimatrix(CMatrix::Zero(2, 2), CMatrix::Zero(2, 3)),
               DimensionMismatch);
  const Bimatrix x = Bimatrix::Zero(2, 3);
  EXPECT_THROW(multiply(x, x), DimensionMismatch);
  EXPECT_THROW(cvlqr::apply(x, CVector::Zero(2)), DimensionMismatch);
  EXPECT_THROW(inverse(x), DimensionMismatch);
}

TEST(Apply, Examples) {
  InstanceGenerator gen(3);
  const CVector x = gen.complex_vector(3);
  EXPECT_TRUE(cvlqr::apply(Bimatrix::Identity(3), x).isApprox(x));

  const CVector v = CVector::Constant(1, Complex(1, 1));
  const CVector y = cvlqr::apply(Bimatrix::Antilinear(scalar(1.0)), v);
  EXPECT_EQ(y(0), Complex(1, -1));
}

TEST(Apply, AgreesWithEmbedding) {
  InstanceGenerator gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Bimatrix x(gen.complex_matrix(3, 3), gen.complex_matrix(3, 3));
    const CVector v = gen.complex_vector(3);
    CVector stacked(6);
    stacked << v, v.conjugate();
    const CVector expected =
        (block_embed(x.m1(), x.m2()) * stacked).head(3);
    EXPECT_LT(max_abs(cvlqr::apply(x, v) - expected), 1e-14 * (1 + expected.norm()));
  }
}

TEST(Multiply, Examples) {
  InstanceGenerator gen(7);
  const Bimatrix b(gen.complex_matrix(2, 3), gen.complex_matrix(2, 3));
  const Bimatrix ib = Bimatrix::Identity(2) * b;
  EXPECT_TRUE(ib.m1().isApprox(b.m1()));
  EXPECT_TRUE(ib.m2().isApprox(b.m2()));

  // Two antilinear maps compose to a linear one: {0,a}{0,b} = {conj(a) b, 0}.
  const Complex a(2, 1), c(-1, 3);
  const Bimatrix prod =
      Bimatrix::Antilinear(scalar(a)) * Bimatrix::Antilinear(scalar(c));
  EXPECT_NEAR(std::abs(prod.m1()(0, 0) - std::conj(a) * c), 0.0, 1e-15);
  EXPECT_EQ(prod.m2()(0, 0), Complex(0.0));
}

TEST(ConjTranspose, Examples) {
  EXPECT_TRUE(conj_transpose(Bimatrix::Identity(3)).m1().isApprox(
      CMatrix::Identity(3, 3)));
  const Complex a(1, 2), b(3, -4);
  const Bimatrix t = conj_transpose(Bimatrix(scalar(a), scalar(b)));
  EXPECT_EQ(t.m1()(0, 0), std::conj(a));
  EXPECT_EQ(t.m2()(0, 0), b);

  InstanceGenerator gen(9);
  const Bimatrix x(gen.complex_matrix(2, 3), gen.complex_matrix(2, 3));
  const Bimatrix xh = conj_transpose(x);
  EXPECT_EQ(xh.rows(), 3);
  EXPECT_LT(max_abs(embed(xh) - embed(x).adjoint()), 1e-14);
}

TEST(Inverse, Examples) {
  InstanceGenerator gen(13);
  const CMatrix a = gen.complex_matrix(3, 3) + 3.0 * CMatrix::Identity(3, 3);
  const Bimatrix inv = inverse(Bimatrix::Linear(a));
  EXPECT_LT(max_abs(inv.m1() - a.inverse()), 1e-12);
  EXPECT_LT(max_abs(inv.m2()), 1e-12);

  // conj(2j) conj(x) = y  =>  x = conj(y / conj(2j)) = conj(-0.5j) conj(y).
  const Bimatrix s = inverse(Bimatrix::Antilinear(scalar(Complex(0, 2))));
  EXPECT_NEAR(std::abs(s.m1()(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.m2()(0, 0) - Complex(0, 0.5)), 0.0, 1e-15);
  EXPECT_LT(max_abs(embed(s) - block_embed(scalar(0), scalar(Complex(0, 2)))
                                   .inverse()),
            1e-15);

  EXPECT_THROW(inverse(Bimatrix(scalar(1), scalar(1))), SingularBimatrix);
}

TEST(Bnorm, Examples) {
  EXPECT_EQ(bnorm(Bimatrix::Zero(3, 2)), 0.0);
  EXPECT_DOUBLE_EQ(bnorm(Bimatrix::Identity(2)), 2.0);
  EXPECT_DOUBLE_EQ(bnorm(Bimatrix(scalar(3), scalar(4))), std::sqrt(50.0));
}

// Homomorphism over random sizes up to 5.
TEST(Embed, HomomorphismProperty) {
  InstanceGenerator gen(2024);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(gen.engine()), p = size(gen.engine()),
              q = size(gen.engine());
    const Bimatrix x(gen.complex_matrix(n, p), gen.complex_matrix(n, p));
    const Bimatrix x2(gen.complex_matrix(n, p), gen.complex_matrix(n, p));
    const Bimatrix y(gen.complex_matrix(p, q), gen.complex_matrix(p, q));
    const double scale = 1 + embed(x).norm() * embed(y).norm();

    EXPECT_LT(max_abs(embed(x * y) - embed(x) * embed(y)), 1e-11 * scale);
    EXPECT_LT(max_abs(embed(x + x2) - (embed(x) + embed(x2))), 1e-11 * scale);
    EXPECT_LT(max_abs(embed(conj_transpose(x)) - embed(x).adjoint()), 1e-14);

    const Bimatrix sq(gen.complex_matrix(n, n), gen.complex_matrix(n, n));
    const CMatrix e = embed(sq);
    const Eigen::JacobiSVD<CMatrix> svd(e);
    const double cond = svd.singularValues()(0) /
                        svd.singularValues()(svd.singularValues().size() - 1);
    if (cond > 1e6) continue;
    EXPECT_LT(max_abs(embed(inverse(sq)) - e.inverse()),
              1e-11 * cond * (1 + e.inverse().norm()));
  }
}

TEST(Multiply, ActionConsistencyProperty) {
  InstanceGenerator gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Bimatrix x(gen.complex_matrix(3, 4), gen.complex_matrix(3, 4));
    const Bimatrix y(gen.complex_matrix(4, 2), gen.complex_matrix(4, 2));
    const CVector v = gen.complex_vector(2);
    const CVector lhs = cvlqr::apply(multiply(x, y), v);
    const CVector rhs = cvlqr::apply(x, cvlqr::apply(y, v));
    EXPECT_LT(max_abs(lhs - rhs), 1e-11 * (1 + rhs.norm()));
  }
}

TEST(HermitianBimatrix, SymmetrizesSmallErrorsRejectsLarge) {
  InstanceGenerator gen(21);
  const CMatrix h = gen.hermitian_pd(3);
  CMatrix s = gen.complex_matrix(3, 3);
  s = (s + s.transpose()).eval();

  CMatrix h_noisy = h;
  h_noisy(0, 1) += 1e-13;
  const HermitianBimatrix p(h_noisy, s);
  EXPECT_EQ(max_abs(p.p1() - p.p1().adjoint()), 0.0);
  EXPECT_EQ(max_abs(p.p2() - p.p2().transpose()), 0.0);
  EXPECT_GT(p.structure_correction(), 0.0);

  CMatrix h_bad = h;
  h_bad(0, 1) += 1.0;
  EXPECT_THROW(HermitianBimatrix(h_bad, s), StructureViolation);
  EXPECT_THROW(is_positive_definite(Bimatrix(h_bad, s)), StructureViolation);
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(is_positive_definite(HermitianBimatrix::Linear(
      CMatrix::Identity(3, 3))));
  // Embedding [[2,1],[1,2]] has eigenvalues 1 and 3.
  const HermitianBimatrix p21(scalar(2), scalar(1));
  EXPECT_TRUE(is_positive_definite(p21));
  EXPECT_NEAR(min_eigenvalue(p21), 1.0, 1e-14);
  EXPECT_FALSE(is_positive_definite(HermitianBimatrix(scalar(1), scalar(1))));
}

TEST(PsdLeq, Examples) {
  const HermitianBimatrix i = HermitianBimatrix::Linear(CMatrix::Identity(2, 2));
  const HermitianBimatrix i2 =
      HermitianBimatrix::Linear(2.0 * CMatrix::Identity(2, 2));
  EXPECT_TRUE(psd_leq(i, i));
  EXPECT_TRUE(psd_leq(i, i2));
  EXPECT_FALSE(psd_leq(i2, i));
  EXPECT_TRUE(psd_leq(HermitianBimatrix(scalar(1), scalar(0)),
                      HermitianBimatrix(scalar(2), scalar(1))));
}

HermitianBimatrix random_hermitian(InstanceGenerator& gen, int n) {
  const CMatrix x = gen.complex_matrix(2 * n, 2 * n);
  // Project an arbitrary 2n x 2n matrix onto Hermitian embeddings; X X^H is
  // PSD and its projection keeps that property.
  const CMatrix g = x * x.adjoint();
  const CMatrix p1 = 0.5 * (g.topLeftCorner(n, n) +
                            g.bottomRightCorner(n, n).conjugate());
  const CMatrix p2 = 0.5 * (g.bottomLeftCorner(n, n) +
                            g.topRightCorner(n, n).conjugate());
  return HermitianBimatrix::project(Bimatrix(p1, p2));
}

TEST(PsdLeq, PartialOrderProperty) {
  InstanceGenerator gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const HermitianBimatrix a = random_hermitian(gen, 3);
    const HermitianBimatrix d1 = random_hermitian(gen, 3);
    const HermitianBimatrix d2 = random_hermitian(gen, 3);
    const HermitianBimatrix b = HermitianBimatrix::project(a + d1);
    const HermitianBimatrix c = HermitianBimatrix::project(b + d2);
    EXPECT_TRUE(psd_leq(a, a));
    EXPECT_TRUE(psd_leq(a, b));
    EXPECT_TRUE(psd_leq(b, c));
    EXPECT_TRUE(psd_leq(a, c));  // transitivity
    // Antisymmetry: both directions only when equal up to tolerance.
    if (psd_leq(b, a)) EXPECT_LT(bnorm(b - a), 1e-8 * (1 + bnorm(a)));
  }
}

TEST(QuadraticForm, Examples) {
  InstanceGenerator gen(41);
  const CVector x = gen.complex_vector(4);
  EXPECT_NEAR(
      quadratic_form(HermitianBimatrix::Linear(CMatrix::Identity(4, 4)), x),
      x.squaredNorm(), 1e-12);
  const CVector v = CVector::Constant(1, Complex(1, 1));
  EXPECT_NEAR(quadratic_form(HermitianBimatrix(scalar(0), scalar(1)), v), 0.0,
              1e-15);
  EXPECT_NEAR(quadratic_form(HermitianBimatrix(scalar(2), scalar(1)),
                             CVector::Ones(1)),
              3.0, 1e-15);
  EXPECT_THROW(quadratic_form(HermitianBimatrix(scalar(2), scalar(1)), x),
               DimensionMismatch);
}

TEST(QuadraticForm, HalfEmbeddingFormProperty) {
  InstanceGenerator gen(43);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianBimatrix p = random_hermitian(gen, 3);
    const CVector x = gen.complex_vector(3);
    CVector s(6);
    s << x, x.conjugate();
    const Complex half = 0.5 * (s.adjoint() * block_embed(p.p1(), p.p2()) * s)(0);
    EXPECT_LT(std::abs(half.imag()), 1e-12 * (1 + std::abs(half)));
    EXPECT_NEAR(quadratic_form(p, x), half.real(), 1e-12 * (1 + std::abs(half)));
  }
}

}  // namespace
}  // namespace cvlqr
