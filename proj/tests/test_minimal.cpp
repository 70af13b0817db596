#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace minbasis;

namespace {

std::vector<Index> v(std::initializer_list<Index> l) { return l; }

}  // namespace

TEST(RankProfile, Example1) {
  const RankProfile p = rank_profile(fixtures::example1_M());
  EXPECT_EQ(p.ranks, v({8, 16, 24, 30}));
  EXPECT_EQ(p.nullities, v({0, 0, 0, 2}));
  EXPECT_EQ(p.alphas, v({0, 0, 0, 2}));
  ASSERT_TRUE(p.d_prime);
  EXPECT_EQ(*p.d_prime, 3);
  EXPECT_TRUE(p.normal_rank_full);
  EXPECT_EQ(p.tolerances.size(), p.ranks.size());
}

TEST(RankProfile, Example2) {
  const RankProfile p = rank_profile(fixtures::example2_M());
  EXPECT_EQ(p.ranks, v({6, 11, 15}));
  EXPECT_EQ(p.nullities, v({1, 3, 6}));
  EXPECT_EQ(p.alphas, v({1, 1, 1}));
  EXPECT_EQ(*p.d_prime, 2);
}

TEST(RankProfile, Example3) {
  const RankProfile p = rank_profile(fixtures::example3_M());
  EXPECT_EQ(p.ranks, v({8, 16, 24, 32, 38}));
  EXPECT_EQ(p.nullities, v({0, 0, 0, 0, 2}));
  EXPECT_EQ(p.alphas, v({0, 0, 0, 0, 2}));
  EXPECT_EQ(*p.d_prime, 4);
}

TEST(RankProfile, Preconditions) {
  EXPECT_THROW(rank_profile(fixtures::example1_M().transpose()), PreconditionError);
  EXPECT_THROW(rank_profile(PolyMat<double>::zero(1, 3, 0)), PreconditionError);
  EXPECT_THROW(rank_profile(fixtures::example1_M(), 0), PreconditionError);
}

TEST(RankProfile, ConstantFullRankHasDPrimeZero) {
  // [1, l] has index 1; [1, 0] + 0 l is constant with index 0.
  const auto p = fixtures::poly({{{1, 0}}, {{0, 0}}});
  const RankProfile prof = rank_profile(p);
  EXPECT_EQ(*prof.d_prime, 0);
  EXPECT_EQ(right_minimal_indices(prof), (std::vector<int>{0}));
}

TEST(RankProfile, NotFullNormalRank) {
  // Row 2 = l * row 1: normal rank 1 < 2.
  const auto p = fixtures::poly({{{1, 2, 3}, {0, 0, 0}}, {{0, 1, 0}, {1, 2, 3}}, {{0, 0, 0}, {0, 1, 0}}});
  const RankProfile prof = rank_profile(p);
  EXPECT_FALSE(prof.normal_rank_full);
  EXPECT_FALSE(prof.d_prime);
  EXPECT_EQ(prof.last_increment, 1);
  ASSERT_TRUE(prof.evaluation_rank);
  EXPECT_EQ(*prof.evaluation_rank, 1);
  try {
    right_minimal_indices(prof);
    FAIL() << "expected NotFullNormalRankError";
  } catch (const NotFullNormalRankError& e) {
    EXPECT_EQ(e.stabilized_rank(), 1);
  }
  const Certificate c = certify_minimal_basis(p);
  EXPECT_FALSE(c.is_minimal_basis);
  EXPECT_EQ(c.reason, CertificateReason::not_full_normal_rank);
}

TEST(MinimalIndices, ReferenceExamples) {
  EXPECT_EQ(right_minimal_indices(fixtures::example1_M()), (std::vector<int>{3, 3}));
  EXPECT_EQ(right_minimal_indices(fixtures::example2_M()), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(right_minimal_indices(fixtures::example3_M()), (std::vector<int>{4, 4}));
}

TEST(MinimalIndexSum, ReferenceExamples) {
  EXPECT_EQ(minimal_index_sum(rank_profile(fixtures::example1_M()), 6), 6);
  EXPECT_EQ(minimal_index_sum(rank_profile(fixtures::example2_M()), 4), 3);
  EXPECT_EQ(minimal_index_sum(rank_profile(fixtures::example3_M()), 6), 8);
  RankProfile none;
  EXPECT_THROW(minimal_index_sum(none, 1), PreconditionError);
}

TEST(Certify, Example1) {
  const Certificate c = certify_minimal_basis(fixtures::example1_M());
  EXPECT_TRUE(c.is_minimal_basis);
  EXPECT_EQ(c.reason, CertificateReason::ok);
  EXPECT_EQ(c.hr_rank, 6);
  EXPECT_EQ(c.degree_sum_expected, 6);
  EXPECT_EQ(c.degree_sum_observed, 6);
  EXPECT_GT(c.tolerance_used, 0.0);
}

TEST(Certify, Example2) {
  const Certificate c = certify_minimal_basis(fixtures::example2_M());
  EXPECT_FALSE(c.is_minimal_basis);
  EXPECT_EQ(c.reason, CertificateReason::degree_sum_mismatch);
  EXPECT_EQ(c.hr_rank, 4);
  EXPECT_EQ(c.degree_sum_observed, 3);
  EXPECT_EQ(c.degree_sum_expected, 4);
}

TEST(Certify, Example3) {
  const Certificate c = certify_minimal_basis(fixtures::example3_M());
  EXPECT_TRUE(c.is_minimal_basis);
  EXPECT_EQ(c.degree_sum_observed, 8);
  EXPECT_EQ(c.degree_sum_expected, 8);
}

TEST(Certify, CommonFactor) {
  // [l, l^2] = l [1, l].
  const auto p = fixtures::poly({{{0, 0}}, {{1, 0}}, {{0, 1}}});
  const Certificate c = certify_minimal_basis(p);
  EXPECT_FALSE(c.is_minimal_basis);
  EXPECT_EQ(c.reason, CertificateReason::degree_sum_mismatch);
}

TEST(CertifyFullLeading, Example1) {
  const Certificate c = certify_full_leading(fixtures::example1_M());
  EXPECT_TRUE(c.is_minimal_basis);
  EXPECT_EQ(*c.d_prime, 3);
  // Row counts of S_1, S_2, S_3: 12, 18, 24; ranks 8, 16, 24.
  EXPECT_EQ(c.profile.rank(3), 24);
  EXPECT_EQ(sylvester(fixtures::example1_M(), 3).rows(), 24);
}

TEST(CertifyFullLeading, Example2) {
  const Certificate c = certify_full_leading(fixtures::example2_M());
  EXPECT_FALSE(c.is_minimal_basis);
  // r_{d'} = 11 differs from m (d + d') = 12.
  EXPECT_EQ(c.profile.rank(2), 11);
  EXPECT_EQ(4 * (1 + *c.profile.d_prime), 12);
}

TEST(CertifyFullLeading, Example3Throws) {
  EXPECT_THROW(certify_full_leading(fixtures::example3_M()), PreconditionError);
}

TEST(ClassicalCheck, Example1Passes) {
  const ClassicalCheck c = classical_check(fixtures::example1_M(), 200, 1);
  EXPECT_TRUE(c.passed());
  EXPECT_EQ(c.samples, 200);
  EXPECT_GT(c.min_sigma_m, 0.1);
}

TEST(ClassicalCheck, CommonFactorDetectedAtOrigin) {
  const auto p = fixtures::poly({{{0, 0}}, {{1, 0}}, {{0, 1}}});
  const ClassicalCheck c = classical_check(p, 50, 2);
  EXPECT_FALSE(c.passed());
  EXPECT_FALSE(c.no_sampled_rank_drop);
  EXPECT_EQ(c.argmin, Complex(0.0, 0.0));
  EXPECT_TRUE(certify_minimal_basis(p).is_minimal_basis == false);
}

TEST(ClassicalCheck, Example2Verdicts) {
  // Row 1 of Example 2 is l e_1, which vanishes at 0: the origin sample finds it.
  const ClassicalCheck with_origin = classical_check(fixtures::example2_M(), 200, 3);
  EXPECT_TRUE(with_origin.row_reduced);
  EXPECT_EQ(with_origin.hr_rank, 4);
  EXPECT_FALSE(with_origin.no_sampled_rank_drop);

  // Without the origin, random samples miss the single bad point.
  ClassicalOptions opts;
  opts.include_origin = false;
  const ClassicalCheck without = classical_check(fixtures::example2_M(), 200, 3, opts);
  EXPECT_TRUE(without.passed());
  EXPECT_FALSE(certify_minimal_basis(fixtures::example2_M()).is_minimal_basis);
}

TEST(ClassicalCheck, Preconditions) {
  EXPECT_THROW(classical_check(fixtures::example1_M(), 0, 1), PreconditionError);
  ClassicalOptions opts;
  opts.radii.clear();
  EXPECT_THROW(classical_check(fixtures::example1_M(), 5, 1, opts), PreconditionError);
}

TEST(Certify, ComplexInput) {
  const auto m = fixtures::example1_M();
  std::vector<Mat<Complex>> c;
  for (const auto& ci : m.coeffs()) c.push_back(Complex(0.0, 1.0) * ci.cast<Complex>());
  const Certificate cert = certify_minimal_basis(PolyMat<Complex>(c));
  EXPECT_TRUE(cert.is_minimal_basis);
  EXPECT_EQ(*cert.d_prime, 3);
}

TEST(Certify, AgreesWithFullLeadingOnRandom) {
  gen::Gen g(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = g.integer(1, 3);
    const Index n = g.integer(1, 3);
    const auto p = g.poly(m, m + n, g.integer(1, 2));
    const Certificate a = certify_minimal_basis(p);
    const Certificate b = certify_full_leading(p);
    EXPECT_EQ(a.is_minimal_basis, b.is_minimal_basis);
    EXPECT_EQ(a.d_prime, b.d_prime);
  }
}

TEST(Certify, MarginalFlagOnAmbiguousGap) {
  // Singular values 1, 0.05, 0.005 against tolerance 0.01: gap ratio 10.
  const auto p = fixtures::poly({{{1, 0, 0}, {0, 0.05, 0}}, {{0, 0, 0}, {0, 0, 0.005}}});
  const Certificate cert = certify_minimal_basis(p, 0.01);
  EXPECT_TRUE(cert.marginal);
  EXPECT_EQ(cert.hr_rank, 1);
  EXPECT_FALSE(certify_minimal_basis(fixtures::example1_M()).marginal);
}
