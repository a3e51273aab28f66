#include <gtest/gtest.h>

#include "meanexp/propgroups.hpp"

using namespace meanexp;

namespace {

GSGroupParams G(unsigned d, unsigned r, long p) {
  GSGroupParams g;
  g.d = d;
  g.r = r;
  g.p = p;
  return g;
}

}  // namespace

TEST(Series, SquareOfGeometric) {
  auto s = gs_series(G(2, 1, 3), 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(s.coeffs[n], n + 1);
}

TEST(Series, NegativeCoefficientRejected) {
  try {
    gs_series(G(1, 1, 3), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::inconsistent);
  }
}

TEST(Ranks, SmallExample) {
  auto z = gs_ranks(G(4, 4, 3), 8);
  EXPECT_EQ(z.at(1), 4);
  EXPECT_EQ(z.at(2), 2);
  EXPECT_EQ(z.at(3), 8);
  EXPECT_THROW(z.at(9), Error);
}

// b_1 = d and b_2 = C(d,2) - r for odd p: generators, then commutators
// minus relations.
TEST(Ranks, FirstTwoTermsForOddP) {
  for (unsigned d = 2; d <= 9; ++d)
    for (unsigned r = 1; r <= d * (d - 1) / 2 && r * 4 <= d * d; ++r) {
      auto z = gs_ranks(G(d, r, 5), 2);
      EXPECT_EQ(z.at(1), d);
      EXPECT_EQ(z.at(2), d * (d - 1) / 2 - r);
    }
}

// Product matching and the power-sum route are independent computations.
TEST(Ranks, TwoRoutesAgree) {
  for (long p : {2L, 3L, 5L, 7L})
    for (unsigned d = 2; d <= 7; ++d)
      for (unsigned r = 1; 4 * r <= d * d; ++r) {
        GSGroupParams g = G(d, r, p);
        const std::size_t N = 96;
        std::optional<ZassenhausRanks> a, b;
        try {
          a = zassenhaus_ranks(gs_series(g, N), g.p, N);
        } catch (const Error&) {
        }
        try {
          b = gs_ranks(g, N);
        } catch (const Error&) {
        }
        ASSERT_EQ(a.has_value(), b.has_value()) << d << " " << r << " " << p;
        if (a) {
          EXPECT_EQ(a->b, b->b) << d << " " << r << " " << p;
        }
      }
}

TEST(Ranks, RoundTripThroughProduct) {
  for (long p : {2L, 3L, 5L}) {
    GSGroupParams g = G(5, 4, p);
    auto s = gs_series(g, 64);
    auto z = zassenhaus_ranks(s, g.p, 64);
    EXPECT_EQ(reconstruct_series(z, 64).coeffs, s.coeffs);
  }
}

TEST(Ranks, HigherDegreeRelations) {
  GSGroupParams g = G(3, 2, 3);
  g.relation_degrees = {2, 3};
  EXPECT_FALSE(g.quadratic());
  auto a = zassenhaus_ranks(gs_series(g, 60), g.p, 60);
  EXPECT_EQ(a.b, gs_ranks(g, 60).b);
  g.relation_degrees = {1, 3};
  EXPECT_THROW(g.degrees(), Error);
}

TEST(PowerSums, IdentityWhenPDoesNotDivideM) {
  for (long p : {3L, 5L, 7L}) {
    GSGroupParams g = G(4, 3, p);
    auto z = gs_ranks(g, 40);
    for (std::size_t m = 1; m <= 40; ++m) {
      if (m % p == 0) {
        try {
          power_sum_check(g, m, z);
          FAIL();
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::inapplicable);
        }
      } else {
        EXPECT_TRUE(power_sum_check(g, m, z)) << m;
      }
    }
  }
}

TEST(PowerSums, SmallValues) {
  auto s = power_sums(G(4, 4, 3), 3);
  EXPECT_EQ(s[1], 4);
  EXPECT_EQ(s[2], 8);
  EXPECT_EQ(s[3], 16);
}

TEST(PowerOfTwo, MatchesFullRanks) {
  for (long p : {3L, 5L}) {
    GSGroupParams g = G(4, 4, p);
    auto z = gs_ranks(g, 16);
    for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(b_power_of_two(g, n), z.at(std::size_t(1) << n)) << n;
  }
  EXPECT_EQ(b_power_of_two(G(4, 4, 3), 1), 2);
  try {
    b_power_of_two(G(4, 4, 2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::inapplicable);
  }
}

TEST(Windows, Telescope) {
  auto z = gs_ranks(G(4, 3, 3), 255);
  EXPECT_EQ(index_log(z, 0), 0);
  EXPECT_EQ(index_log(z, 1), z.at(1));
  for (unsigned n = 0; n < 7; ++n) EXPECT_EQ(index_log(z, n + 1), index_log(z, n) + window_rank(z, n));
  EXPECT_THROW(window_rank(z, 8), Error);
}

TEST(Witnesses, ExactRowsAndEpsilonMonotone) {
  GSGroupParams g = G(4, 4, 3);
  auto loose = theo2_witnesses(g, 0.9, 8);
  auto tight = theo2_witnesses(g, 0.1, 8);
  EXPECT_TRUE(loose.gs_typical);
  ASSERT_EQ(loose.rows.size(), 8u);
  auto z = gs_ranks(g, 511);
  for (unsigned n = 1; n <= 8; ++n) {
    const auto& row = loose.rows[n - 1];
    EXPECT_EQ(row.regime, "exact");
    EXPECT_EQ(row.index_log, index_log(z, n).str());
    EXPECT_EQ(row.window_rank, window_rank(z, n).str());
    if (tight.rows[n - 1].satisfied) {
      EXPECT_TRUE(row.satisfied);
    }
  }
  EXPECT_FALSE(theo2_witnesses(G(2, 1, 3), 0.5, 2).gs_typical);
  EXPECT_TRUE(theo2_witnesses(g, 0.5, 0).rows.empty());
  EXPECT_THROW(theo2_witnesses(g, 1.0, 3), Error);
}

// The log-float continuation against exact ranks computed past the switch.
TEST(Witnesses, LogFloatMatchesExactContinuation) {
  GSGroupParams g = G(4, 3, 3);
  const unsigned n = 12;
  auto rep = theo2_witnesses(g, 0.5, n);
  const auto& row = rep.rows[n - 1];
  EXPECT_EQ(row.regime, "log-float");
  EXPECT_EQ(rep.rows[10].regime, "exact");
  auto z = gs_ranks(g, (std::size_t(1) << (n + 1)) - 1);
  double exact_w = log_big(window_rank(z, n)) / std::log(10.0);
  double exact_i = log_big(index_log(z, n)) / std::log(10.0);
  EXPECT_NEAR(row.log10_window_rank, exact_w, 1e-9 * exact_w);
  EXPECT_NEAR(row.log10_index_log, exact_i, 1e-9 * exact_i);
}

TEST(Uniform, Bounds) {
  auto u = uniform_lower(3, 5);
  EXPECT_EQ(u.bound, 5.0);
  EXPECT_EQ(u.index_log, 15);
  EXPECT_THROW(uniform_lower(0, 1), Error);
  EXPECT_EQ(prop_theo1_bound(2.5, 4), 10.0);
  EXPECT_THROW(prop_theo1_bound(0, 4), Error);
  EXPECT_THROW(prop_theo1_bound(1, 0.5), Error);
}
