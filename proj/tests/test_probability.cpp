#include <gtest/gtest.h>

#include "csm/probability.hpp"

using namespace csm;

namespace {

// (m+n+1) 2^n (d+1)^{m+1} in machine integers
long long hand_D(int n, int m, int d) {
  long long v = m + n + 1;
  for (int k = 0; k < n; ++k) v *= 2;
  for (int k = 0; k <= m; ++k) v *= d + 1;
  return v;
}

}  // namespace

TEST(Probability, DegreeBoundMatchesHandEvaluation) {
  EXPECT_EQ(degree_bound_D(1, 0, 1), 8);
  EXPECT_EQ(degree_bound_D(2, 1, 2), 144);
  EXPECT_EQ(degree_bound_D(3, 2, 1), 384);
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 4; ++m)
      for (int d = 1; d <= 4; ++d) EXPECT_EQ(degree_bound_D(n, m, d), hand_D(n, m, d));
}

TEST(Probability, PerDegreeBoundIsExactProduct) {
  BigInteger S = 32749;
  BigRational expected = (BigRational(1) - BigRational(16, 32749)) * (BigRational(1) - BigRational(144, 32749));
  EXPECT_EQ(projective_degree_success_bound(2, 2, 2, 1, S), expected);
}

TEST(Probability, BoundsIncreaseWithSetSizeAndTendToOne) {
  BigRational prev = 0;
  for (long long s : {1000LL, 10000LL, 100000LL, 1000000LL, 1000000000LL}) {
    BigRational b = segre_success_bound(4, 4, 2, 2, BigInteger(s));
    EXPECT_GE(b, prev);
    EXPECT_LE(b, 1);
    prev = b;
  }
  EXPECT_GT(prev, BigRational(999, 1000));
  BigInteger huge = BigInteger(1) << 200;
  EXPECT_GT(segre_success_bound(4, 4, 2, 2, huge), BigRational(1) - BigRational(1, BigInteger(1) << 150));
}

TEST(Probability, BoundsDecreaseWithDegree) {
  BigInteger S = 32749;
  for (int d = 1; d < 5; ++d)
    EXPECT_GE(segre_success_bound(3, 3, d, 1, S), segre_success_bound(3, 3, d + 1, 1, S));
}

TEST(Probability, ClampsAtZero) {
  EXPECT_EQ(projective_degree_success_bound(1, 3, 4, 4, BigInteger(10)), 0);
  EXPECT_EQ(segre_success_bound(4, 4, 3, 1, BigInteger(10)), 0);
}

TEST(Probability, RejectsBadParameters) {
  EXPECT_THROW(degree_bound_D(0, 1, 1), PreconditionError);
  EXPECT_THROW(segre_success_bound(2, 2, 2, 5, BigInteger(100)), PreconditionError);
  EXPECT_THROW(projective_degree_success_bound(1, 2, 2, 2, BigInteger(0)), PreconditionError);
}

TEST(Probability, DecimalRendering) {
  EXPECT_EQ(to_decimal(BigRational(1, 3)), "0.333333");
  EXPECT_EQ(to_decimal(BigRational(-5, 4), 2), "-1.25");
  EXPECT_EQ(to_decimal(BigRational(2), 0), "2");
}
