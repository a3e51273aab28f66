#include <gtest/gtest.h>

#include <random>

#include "meanexp/arith.hpp"

using namespace meanexp;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Legendre symbol by listing squares.
int brute_legendre(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

}  // namespace

TEST(Sieve, SmallLimits) {
  EXPECT_EQ(sieve_primes(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(sieve_primes(2), (std::vector<std::uint64_t>{2}));
  auto p100 = sieve_primes(100);
  EXPECT_EQ(p100.size(), 25u);
  EXPECT_EQ(p100.back(), 97u);
}

TEST(Sieve, RejectsEmptyRange) {
  try {
    sieve_primes(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_range);
  }
}

TEST(Sieve, MatchesTrialDivisionAcrossSegments) {
  auto primes = sieve_primes(100000);
  std::size_t idx = 0;
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    if (trial_prime(n)) {
      ASSERT_LT(idx, primes.size());
      EXPECT_EQ(primes[idx++], n);
    }
  }
  EXPECT_EQ(idx, primes.size());
  EXPECT_EQ(sieve_primes(200000).size(), 17984u);
}

TEST(Primality, MillerRabin) {
  auto primes = sieve_primes(5000);
  std::size_t idx = 0;
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    bool expect = idx < primes.size() && primes[idx] == n;
    if (expect) ++idx;
    EXPECT_EQ(is_prime_u64(n), expect) << n;
  }
  EXPECT_TRUE(is_prime(BigInt("618970019642690137449562111")));  // 2^89 - 1
  EXPECT_FALSE(is_prime(BigInt("618970019642690137449562113")));
  EXPECT_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(-3, 7), 1);
  EXPECT_EQ(kronecker(5, 11), 1);
  EXPECT_EQ(kronecker(21, 7), 0);
  EXPECT_EQ(kronecker(-3, 5), -1);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(1, 2), 1);
  EXPECT_EQ(kronecker(-1, -1), -1);
  EXPECT_EQ(kronecker(0, 1), 1);
  EXPECT_THROW(kronecker(3, 0), Error);
}

TEST(Kronecker, AgreesWithBruteForceOnOddPrimes) {
  for (std::uint64_t p : sieve_primes(1000)) {
    if (p == 2) continue;
    for (long a = -999; a < 1000; a += 7) EXPECT_EQ(kronecker(a, p), brute_legendre(a, p)) << a << " " << p;
  }
}

TEST(Kronecker, MultiplicativeInOddModulus) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> A(-5000, 5000), M(0, 2000);
  for (int i = 0; i < 5000; ++i) {
    long a = A(rng), m = 2 * M(rng) + 1, n = 2 * M(rng) + 1;
    EXPECT_EQ(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
  }
}

TEST(Kronecker, BigModulusMatchesEulerCriterion) {
  BigInt p("618970019642690137449562111");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    BigInt a = BigInt(rng()) * rng() + 1;
    BigInt e = powm(a, (p - 1) / 2, p);
    int expect = e == 1 ? 1 : (e == p - 1 ? -1 : 0);
    EXPECT_EQ(kronecker(a, p), expect);
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(vp(12, 2), 2u);
  EXPECT_EQ(vp(12, 3), 1u);
  EXPECT_EQ(vp(7, 5), 0u);
  EXPECT_EQ(vp(-40, 2), 3u);
  EXPECT_THROW(vp(0, 2), Error);
}

TEST(Valuation, ShiftsByOne) {
  for (long n = 1; n < 500; ++n)
    for (long p : {2, 3, 5, 7, 11}) EXPECT_EQ(vp(n * p, p), vp(n, p) + 1);
}

TEST(TameLocalFactor, Examples) {
  EXPECT_EQ(tame_local_factor(7, 2, false), 3u);
  EXPECT_EQ(tame_local_factor(13, 2, false), 2u);
  EXPECT_EQ(tame_local_factor(7, 2, true), 1u);
  EXPECT_EQ(tame_local_factor(31, 3, false), 1u);
  EXPECT_THROW(tame_local_factor(9, 3, false), Error);
}

TEST(TameLocalFactor, PositiveWhenNormIsOneModP) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    for (std::uint64_t q = 3; q < 3000; ++q) {
      if (q % p == 0 || !is_prime_u64(q)) continue;
      unsigned a = tame_local_factor(q, p, false);
      if (q % p == 1) {
        EXPECT_GE(a, 1u) << q << " " << p;
      }
    }
}

TEST(PrimePower, Decomposition) {
  PrimePower q = prime_power_of(3125);
  EXPECT_EQ(q.ell, 5);
  EXPECT_EQ(q.m, 5u);
  EXPECT_EQ(prime_power_of(2).m, 1u);
  EXPECT_EQ(prime_power_of(4489).ell, 67);
  EXPECT_THROW(prime_power_of(12), Error);
  EXPECT_THROW(make_prime_power(9, 2), Error);
}

TEST(LogBig, AgreesWithDoubleLog) {
  EXPECT_NEAR(log_big(892371480), std::log(892371480.0), 1e-12);
  BigInt huge = ipow(BigInt(10), 400);
  EXPECT_NEAR(log_big(huge), 400 * std::log(10.0), 1e-9);
}
