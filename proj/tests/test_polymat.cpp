#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace minbasis;
using fixtures::poly;

TEST(PolyMat, ConstructionValidatesShapes) {
  EXPECT_THROW(PolyMat<double>(std::vector<Mat<double>>{}), DimensionError);
  EXPECT_THROW(PolyMat<double>(std::vector<Mat<double>>{Mat<double>::Zero(2, 3), Mat<double>::Zero(2, 4)}),
               DimensionError);
  Mat<double> bad = Mat<double>::Zero(1, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(PolyMat<double>(std::vector<Mat<double>>{bad}), Error);
}

TEST(PolyMat, Degree) {
  EXPECT_EQ(degree(fixtures::one_lambda()), 1);
  EXPECT_EQ(degree(fixtures::example1_M()), 1);
  EXPECT_EQ(degree(PolyMat<double>::zero(2, 3, 3)), 0);
  EXPECT_EQ(PolyMat<double>::zero(2, 3, 3).degree_bound(), 3);
}

TEST(PolyMat, RowDegrees) {
  EXPECT_EQ(row_degrees(fixtures::example1_M()), (std::vector<int>{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(row_degrees(fixtures::example3_M()), (std::vector<int>{1, 1, 1, 1, 2, 2}));
  EXPECT_EQ(row_degrees(PolyMat<double>::zero(2, 3, 1)), (std::vector<int>{0, 0}));
}

TEST(PolyMat, HighestRowDegreeMatrix) {
  Mat<double> expect(1, 2);
  expect << 0, 1;
  EXPECT_EQ(highest_row_degree_matrix(fixtures::one_lambda()), expect);

  Mat<double> hr1 = Mat<double>::Zero(6, 8);
  hr1.rightCols(6) = Mat<double>::Identity(6, 6);
  EXPECT_EQ(highest_row_degree_matrix(fixtures::example1_M()), hr1);
  EXPECT_EQ(rank_nullity(hr1).rank, 6);

  const auto m3 = fixtures::example3_M();
  const Mat<double> hr3 = highest_row_degree_matrix(m3);
  EXPECT_EQ(hr3.topRows(4), m3.coeff(1).topRows(4));
  EXPECT_EQ(hr3.bottomRows(2), m3.coeff(2).bottomRows(2));
  EXPECT_EQ(rank_nullity(hr3).rank, 6);
}

TEST(PolyMat, Evaluate) {
  const Mat<double> v = evaluate(fixtures::one_lambda(), 2.0);
  EXPECT_EQ(v(0, 0), 1.0);
  EXPECT_EQ(v(0, 1), 2.0);

  const Mat<double> at0 = evaluate(fixtures::example1_M(), 0.0);
  Mat<double> expect = Mat<double>::Zero(6, 8);
  expect.leftCols(6) = -Mat<double>::Identity(6, 6);
  EXPECT_EQ(at0, expect);
  EXPECT_EQ(rank_nullity(at0).rank, 6);

  gen::Gen g(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = g.poly(3, 5, g.integer(0, 4));
    const Complex z = g.point_in_disk(2.0);
    EXPECT_LT((evaluate(p, z) - gen::naive_eval(p, z)).norm(), 1e-12 * (1.0 + gen::naive_eval(p, z).norm()));
  }
}

TEST(PolyMat, EvaluateComplexMatrix) {
  gen::Gen g(4);
  const auto p = g.poly<Complex>(2, 3, 2);
  const Complex z(0.3, -1.1);
  EXPECT_LT((evaluate(p, z) - gen::naive_eval(p, z)).norm(), 1e-12);
}

TEST(PolyMat, Reversal) {
  EXPECT_EQ(reversal(fixtures::one_lambda(), 1), poly({{{0, 1}}, {{1, 0}}}));
  const auto m = fixtures::example1_M();
  const auto r = reversal(m, 1);
  EXPECT_EQ(r.coeff(0), m.coeff(1));
  EXPECT_EQ(r.coeff(1), m.coeff(0));
  EXPECT_THROW(reversal(fixtures::example3_M(), 1), PreconditionError);

  // Grade above the degree pads with zero coefficients first.
  const auto r3 = reversal(fixtures::one_lambda(), 3);
  EXPECT_EQ(r3.degree_bound(), 3);
  EXPECT_EQ(r3.coeff(3)(0, 0), 1.0);
  EXPECT_EQ(r3.coeff(2)(0, 1), 1.0);
}

TEST(PolyMat, MultiplyTranspose) {
  const auto prod = poly_multiply_transpose(fixtures::example1_M(), fixtures::example1_N());
  EXPECT_EQ(prod.rows(), 6);
  EXPECT_EQ(prod.cols(), 2);
  EXPECT_EQ(prod.degree_bound(), 4);
  EXPECT_EQ(s1_frobenius(prod), 0.0);

  const auto a = fixtures::one_lambda();
  const auto b = poly({{{0, 1}}, {{-1, 0}}});
  EXPECT_EQ(s1_frobenius(poly_multiply_transpose(a, b)), 0.0);

  EXPECT_THROW(poly_multiply_transpose(a, fixtures::example1_N()), DimensionError);
}

TEST(PolyMat, MultiplyTransposePointwise) {
  gen::Gen g(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = g.poly(2, 4, g.integer(0, 3));
    const auto b = g.poly(3, 4, g.integer(0, 3));
    const auto ab = poly_multiply_transpose(a, b);
    for (int s = 0; s < 5; ++s) {
      const Complex z = g.point_in_disk(1.5);
      const Mat<Complex> lhs = gen::naive_eval(ab, z);
      const Mat<Complex> rhs = gen::naive_eval(a, z) * gen::naive_eval(b, z).transpose();
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + rhs.norm()));
    }
  }
}

TEST(PolyMat, S1Norms) {
  const Norms n1 = s1_norms(fixtures::example1_M());
  EXPECT_NEAR(n1.spectral, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(n1.frobenius, std::sqrt(12.0), 1e-12);

  const Norms z = s1_norms(PolyMat<double>::zero(2, 3, 2));
  EXPECT_EQ(z.spectral, 0.0);
  EXPECT_EQ(z.frobenius, 0.0);

  gen::Gen g(6);
  const auto p = g.poly(3, 4, 2);
  double acc = 0.0;
  for (int i = 0; i <= 2; ++i)
    for (Index r = 0; r < 3; ++r)
      for (Index c = 0; c < 4; ++c) acc += p.coeff(i)(r, c) * p.coeff(i)(r, c);
  EXPECT_NEAR(s1_norms(p).frobenius, std::sqrt(acc), 1e-12);
  EXPECT_NEAR(s1_frobenius(p), std::sqrt(acc), 1e-12);
}

TEST(PolyMat, S1RoundTrip) {
  gen::Gen g(7);
  const auto p = g.poly(2, 5, 3);
  EXPECT_EQ(from_s1_matrix<double>(s1_matrix(p), 2), p);
  EXPECT_THROW(from_s1_matrix<double>(s1_matrix(p), 3), DimensionError);
}

TEST(PolyMat, GradeChanges) {
  const auto p = fixtures::one_lambda().with_degree_bound(3);
  EXPECT_EQ(p.degree_bound(), 3);
  EXPECT_EQ(degree(p), 1);
  EXPECT_EQ(p.with_degree_bound(1), fixtures::one_lambda());
  EXPECT_THROW(fixtures::example3_M().with_degree_bound(1), DimensionError);
}

TEST(PolyMat, ArithmeticAcrossGrades) {
  const auto a = fixtures::one_lambda();
  const auto b = poly({{{1, 1}}, {{0, 0}}, {{2, 0}}});
  const auto s = a + b;
  EXPECT_EQ(s.degree_bound(), 2);
  EXPECT_EQ(s.coeff(0)(0, 0), 2.0);
  EXPECT_EQ(s.coeff(1)(0, 1), 1.0);
  EXPECT_EQ(s.coeff(2)(0, 0), 2.0);
  EXPECT_EQ(max_abs_difference(a - a, PolyMat<double>::zero(1, 2, 1)), 0.0);
  EXPECT_THROW(a + fixtures::example1_M(), DimensionError);
}

TEST(PolyMat, StackAndSelect) {
  const auto m = fixtures::example1_M();
  const auto top = select_rows(m, {0, 1});
  const auto rest = select_rows(m, {2, 3, 4, 5});
  EXPECT_EQ(vstack(top, rest), m);
  EXPECT_EQ(select_rows(m, {1}).coeff(0)(0, 1), -1.0);
}

TEST(PolyMat, FieldTag) {
  EXPECT_EQ(PolyMat<double>::field(), Field::real);
  EXPECT_EQ(PolyMat<Complex>::field(), Field::complex);
}
