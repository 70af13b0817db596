#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace minbasis;

namespace {

RationalMatrix random_integer_matrix(gen::Gen& g, Index rows, Index cols, int bound) {
  std::vector<std::vector<long>> a(static_cast<std::size_t>(rows), std::vector<long>(static_cast<std::size_t>(cols)));
  for (auto& row : a)
    for (auto& x : row) x = g.integer(-bound, bound);
  return RationalMatrix::from_integers(a);
}

RationalMatrix product(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

Mat<double> to_double(const RationalMatrix& a) {
  Mat<double> m(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_d();
  return m;
}

}  // namespace

TEST(ExactRank, ReferenceMatrices) {
  EXPECT_EQ(exact_rank(exact_sylvester(fixtures::example1_M(), 3)), 24);
  EXPECT_EQ(exact_rank(exact_sylvester(fixtures::example2_M(), 2)), 11);
  RationalMatrix id(5, 5);
  for (Index i = 0; i < 5; ++i) id(i, i) = 1;
  EXPECT_EQ(exact_rank(id), 5);
}

TEST(ExactRank, FractionsAndZero) {
  RationalMatrix a(2, 3);
  a(0, 0) = mpq_class(1, 3);
  a(0, 1) = mpq_class(2, 7);
  a(1, 0) = mpq_class(2, 3);
  a(1, 1) = mpq_class(4, 7);
  EXPECT_EQ(exact_rank(a), 1);
  EXPECT_EQ(exact_rank(RationalMatrix(3, 4)), 0);
  EXPECT_THROW(RationalMatrix(0, 3), DimensionError);
}

TEST(ExactRank, KnownRankProducts) {
  gen::Gen g(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Index r = g.integer(1, 4);
    const RationalMatrix a = product(random_integer_matrix(g, 6, r, 5), random_integer_matrix(g, r, 7, 5));
    const Index rank = exact_rank(a);
    EXPECT_LE(rank, r);
    EXPECT_EQ(rank, exact_rank(a.transpose()));
    EXPECT_EQ(rank, rank_nullity(to_double(a)).rank);
  }
}

TEST(ExactRank, PermutationInvariance) {
  gen::Gen g(72);
  const RationalMatrix a = product(random_integer_matrix(g, 5, 3, 4), random_integer_matrix(g, 3, 6, 4));
  RationalMatrix p(5, 6);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 6; ++j) p(i, j) = a((i + 2) % 5, (j + 4) % 6);
  EXPECT_EQ(exact_rank(a), exact_rank(p));
}

TEST(ExactRank, FromDoubleIsExact) {
  Mat<double> m(1, 2);
  m << 0.1, 1.5;
  const RationalMatrix r = RationalMatrix::from_double(m);
  EXPECT_EQ(r(0, 1), mpq_class(3, 2));
  EXPECT_EQ(r(0, 0).get_d(), 0.1);
  EXPECT_NE(r(0, 0), mpq_class(1, 10));
}

TEST(ExactProfile, ReferenceExamples) {
  const RankProfile p3 = exact_rank_profile(fixtures::example3_M());
  EXPECT_EQ(p3.ranks, (std::vector<Index>{8, 16, 24, 32, 38}));
  EXPECT_TRUE(p3.tolerances.empty());
  const RankProfile p2 = exact_rank_profile(fixtures::example2_M());
  EXPECT_EQ(p2.alphas, (std::vector<Index>{1, 1, 1}));
  const RankProfile p1 = exact_rank_profile(fixtures::example1_M());
  EXPECT_EQ(p1.ranks, (std::vector<Index>{8, 16, 24, 30}));
}

TEST(ExactProfile, MatchesFloatingOnSmallIntegers) {
  gen::Gen g(73);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = g.int_poly(2, 4, 1, 3, 0.3);
    const RankProfile e = exact_rank_profile(p);
    const RankProfile f = rank_profile(p);
    EXPECT_EQ(e.ranks, f.ranks);
    EXPECT_EQ(e.d_prime, f.d_prime);
  }
}

TEST(ExactProfile, RejectsComplex) {
  EXPECT_THROW(exact_rank_profile(PolyMat<Complex>::zero(1, 2, 1)), PreconditionError);
}

TEST(ExactNullspace, Example1) {
  const RationalMatrix s4 = exact_sylvester(fixtures::example1_M(), 4);
  const auto basis = exact_nullspace(s4);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) {
    for (const auto& x : exact_multiply(s4, v)) EXPECT_EQ(x, 0);
    // Unpacked as four 8-blocks: block i is the coefficient of l^i. Each
    // vector is a multiple of a row of [l^3 I, l^2 I, l I, I].
    const auto n = fixtures::example1_N();
    bool matched = false;
    for (Index row = 0; row < 2 && !matched; ++row) {
      mpq_class scale = 0;
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i)
        for (Index c = 0; c < 8 && ok; ++c) {
          const mpq_class target(n.coeff(i)(row, c));
          const mpq_class& x = v[static_cast<std::size_t>(i * 8 + c)];
          if (target == 0) {
            ok = x == 0;
          } else if (scale == 0) {
            scale = x / target;
            ok = scale != 0;
          } else {
            ok = x == scale * target;
          }
        }
      matched = ok;
    }
    EXPECT_TRUE(matched);
  }
}

TEST(ExactNullspace, FullColumnRankAndProducts) {
  RationalMatrix id(4, 3);
  for (Index i = 0; i < 3; ++i) id(i, i) = 1;
  EXPECT_TRUE(exact_nullspace(id).empty());

  gen::Gen g(74);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix a = product(random_integer_matrix(g, 4, 2, 6), random_integer_matrix(g, 2, 6, 6));
    const auto basis = exact_nullspace(a);
    EXPECT_EQ(static_cast<Index>(basis.size()) + exact_rank(a), 6);
    for (const auto& v : basis)
      for (const auto& x : exact_multiply(a, v)) EXPECT_EQ(x, 0);
  }
  EXPECT_THROW(exact_multiply(id, RationalVector(2)), DimensionError);
}
