#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xbifix/bounds.hpp"

namespace xbifix {
namespace {

TEST(UpperBound, Examples) {
  EXPECT_EQ(upper_bound(9, 2), Rational(512, 17));
  EXPECT_EQ(floor_of(upper_bound(9, 2)), 30);
  EXPECT_EQ(upper_bound(3, 2), Rational(8, 5));
  EXPECT_EQ(floor_of(upper_bound(3, 2)), 1);
  EXPECT_EQ(upper_bound(7, 2), Rational(128, 13));
  EXPECT_EQ(floor_of(upper_bound(7, 2)), 9);
  EXPECT_THROW(upper_bound(0, 2), DomainError);
  EXPECT_THROW(upper_bound(3, 1), DomainError);
}

TEST(UpperBound, StaysExact) {
  // 2^200 / 399 keeps its full numerator
  Rational r = upper_bound(200, 2);
  EXPECT_EQ(r.get_den(), 399);
  EXPECT_EQ(r.get_num(), big_power(2, 200));
}

TEST(UpperBound, DominatesConstruction) {
  for (unsigned q = 2; q <= 5; ++q) {
    for (std::size_t n = 4; n <= 80; ++n) {
      ASSERT_LE(best_size(n, q).size, floor_of(upper_bound(n, q))) << n << " " << q;
    }
  }
}

TEST(Variance, Examples) {
  EXPECT_EQ(variance_exact(7, 2, 5), Rational(8064, 25));
  EXPECT_DOUBLE_EQ(variance_formula(7, 2, 5), 322.56);
  EXPECT_DOUBLE_EQ(variance_formula(3, 2, 1), 24.0);
  EXPECT_THROW(variance_formula(3, 2, 0), DomainError);
}

TEST(Variance, ZeroAtTheBound) {
  // q^n / (2n-1) is an integer for n = 2, q = 3 (9/3) and n = 5, q = 9
  EXPECT_EQ(variance_exact(2, 3, 3), 0);
  EXPECT_EQ(variance_exact(5, 9, 6561), 0);
}

TEST(Variance, NonnegativeUpToBound) {
  for (unsigned q = 2; q <= 4; ++q) {
    for (std::size_t n = 2; n <= 10; ++n) {
      std::size_t cap = floor_of(upper_bound(n, q)).get_ui();
      for (std::size_t M = 1; M <= cap; M += 1 + cap / 50) {
        ASSERT_GE(variance_exact(n, q, M), 0) << n << " " << q << " " << M;
      }
      ASSERT_GE(variance_exact(n, q, cap), 0);
    }
  }
}

TEST(Catalan, FirstValues) {
  std::vector<unsigned long> expected{1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (std::size_t m = 0; m < expected.size(); ++m) {
    EXPECT_EQ(catalan(m), expected[m]);
  }
}

TEST(Bilotta, Examples) {
  EXPECT_EQ(bilotta_size(9), 14);
  EXPECT_EQ(bilotta_size(12), 72);
  EXPECT_EQ(bilotta_size(30), 4939443);
  EXPECT_THROW(bilotta_size(2), DomainError);
}

TEST(Bilotta, OddLengthsAreCatalan) {
  for (std::size_t m = 1; m <= 20; ++m) EXPECT_EQ(bilotta_size(2 * m + 1), catalan(m));
}

TEST(DistSeq, Examples) {
  auto b17 = dist_seq_bound(17);
  EXPECT_DOUBLE_EQ(b17.bound, 512.0);
  EXPECT_EQ(b17.min_h, 8u);
  EXPECT_DOUBLE_EQ(dist_seq_bound(5).bound, 2.0);
  EXPECT_THROW(dist_seq_bound(1), DomainError);
}

TEST(DistSeq, MinimalH) {
  for (std::size_t n = 2; n <= 200; ++n) {
    unsigned h = dist_seq_bound(n).min_h;
    ASSERT_GE(h * h / 4 + 1, n);
    if (h > 0) {
      ASSERT_LT((h - 1) * (h - 1) / 4 + 1, n);
    }
  }
}

TEST(Report, Fields) {
  auto r = bounds_report(9, 2);
  EXPECT_EQ(r.construction_size, 13);
  EXPECT_EQ(r.best_k, 2u);
  EXPECT_EQ(r.upper_bound, Rational(512, 17));
  EXPECT_EQ(r.bilotta, 14);
  EXPECT_TRUE(r.dist_seq.has_value());
  EXPECT_NEAR(r.ratio_lower, 13.0 * 9 / 512, 1e-15);
  EXPECT_NEAR(r.ratio_upper, 9.0 / 17, 1e-15);
  auto t = bounds_report(6, 3);
  EXPECT_FALSE(t.bilotta.has_value());
  EXPECT_FALSE(t.dist_seq.has_value());
}

TEST(Probe, Targets) {
  EXPECT_NEAR(lower_ratio_limit(2), 0.18394, 5e-6);
  EXPECT_NEAR(lower_ratio_limit(3), 0.24525, 5e-6);
  EXPECT_DOUBLE_EQ(lower_ratio_limit(2), 1 / (2 * std::numbers::e));
}

TEST(Probe, FixedConstant) {
  auto p = asymptotic_probe(2, 8, 8, 2.0);
  ASSERT_EQ(p.rows.size(), 1u);
  auto const& row = p.rows[0];
  double a = find_alpha(8, 2).alpha.to_double();
  EXPECT_EQ(row.n, static_cast<std::size_t>(std::ceil(2 * std::pow(a, 8))));
  EXPECT_EQ(row.size, size_formula({row.n, 8, 2}));
  EXPECT_GT(row.ratio, 0);
  EXPECT_LT(row.ratio, 0.5);
}

// Along n = ceil(c alpha^k) the ratios approach the limit from above.
TEST(Probe, RatiosFallTowardLimitAndStayBelowHalf) {
  for (unsigned q : {2u, 3u}) {
    auto p = asymptotic_probe(q, 2, q == 2 ? 14 : 9, default_probe_constant(q));
    ASSERT_FALSE(p.rows.empty());
    double prev = upper_ratio_limit;
    for (auto const& row : p.rows) {
      EXPECT_LT(row.ratio, prev) << "k=" << row.k;
      EXPECT_GT(row.ratio, p.target) << "k=" << row.k;
      prev = row.ratio;
    }
    EXPECT_LT((prev - p.target) / p.target, 0.01);
  }
}

TEST(Probe, Guards) {
  EXPECT_THROW(asymptotic_probe(2, 2, 3, 0.0), DomainError);
  EXPECT_THROW(asymptotic_probe(2, 30, 30, 2.0, 1000), CapacityError);
}

}  // namespace
}  // namespace xbifix
