#include <gtest/gtest.h>

#include <map>

#include "meanexp/fields.hpp"

using namespace meanexp;

namespace {

Radicand R(std::vector<BigInt> f) { return Radicand::from_factors(f); }

const Radicand kEx1 = Radicand::from_factors({2, 2, 2, 5, 7, 11, 13, 17, 19, 23});

// Coefficients of prod (1 - X^f) over primes above ell, versus
// (1 - X) prod_i (1 - chi_i(ell) X) from the quadratic characters.
std::map<unsigned, long> local_zeta_lhs(const std::vector<NormCount>& above) {
  std::map<unsigned, long> poly{{0, 1}};
  for (const auto& nc : above)
    for (unsigned i = 0; i < nc.count; ++i) {
      std::map<unsigned, long> next;
      for (auto [d, c] : poly) {
        next[d] += c;
        next[d + nc.q.m] -= c;
      }
      poly = next;
    }
  std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
  return poly;
}

std::map<unsigned, long> local_zeta_rhs(const FieldDescriptor& K, const BigInt& ell) {
  std::map<unsigned, long> poly{{0, 1}, {1, -1}};
  for (const auto& s : K.subfields) {
    int chi = kronecker(s.disc, ell);
    std::map<unsigned, long> next;
    for (auto [d, c] : poly) {
      next[d] += c;
      next[d + 1] -= chi * c;
    }
    poly = next;
  }
  std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
  return poly;
}

}  // namespace

TEST(FundamentalDiscriminant, Examples) {
  EXPECT_EQ(fundamental_discriminant(BigInt(-3)), -3);
  EXPECT_EQ(fundamental_discriminant(BigInt(-1)), -4);
  EXPECT_EQ(fundamental_discriminant(BigInt(2) * 5 * 7 * 11 * 13 * 17 * 19 * 23), BigInt(8) * 5 * 7 * 11 * 13 * 17 * 19 * 23);
  EXPECT_EQ(fundamental_discriminant(BigInt(-4620)), -1155);
  EXPECT_EQ(fundamental_discriminant(BigInt(12)), 12);
  EXPECT_THROW(fundamental_discriminant(BigInt(0)), Error);
  EXPECT_THROW(fundamental_discriminant(BigInt(1)), Error);
}

TEST(FundamentalDiscriminant, CongruentToZeroOrOneModFour) {
  for (long d = -500; d <= 500; ++d) {
    if (d == 0 || d == 1) continue;
    Radicand r = Radicand::from_integer(d);
    if (r.core().primes.empty() && r.core().sign == 1) continue;
    BigInt D = fundamental_discriminant(r);
    BigInt m = ((D % 4) + 4) % 4;
    EXPECT_TRUE(m == 0 || m == 1) << d;
  }
}

TEST(Biquadratic, Examples) {
  FieldDescriptor a = biquadratic_field(R({-1}), R({2}));
  EXPECT_EQ(a.abs_disc(), 256);
  EXPECT_EQ(a.r1, 0u);
  EXPECT_EQ(a.r2, 2u);

  FieldDescriptor b = biquadratic_field(kEx1, R({-1, 3}));
  EXPECT_EQ(sqrt(b.abs_disc()), 892371480);
  EXPECT_EQ(sqrt(b.abs_disc()) * sqrt(b.abs_disc()), b.abs_disc());

  FieldDescriptor c = biquadratic_field(R({5}), R({-1, 5}));
  EXPECT_EQ(c.abs_disc(), 400);
  EXPECT_EQ(c.r2, 2u);

  FieldDescriptor d = biquadratic_field(R({2}), R({3}));
  EXPECT_EQ(d.r1, 4u);
  EXPECT_EQ(d.abs_disc(), 8 * 12 * 24);

  EXPECT_THROW(biquadratic_field(R({5}), R({2, 2, 5})), Error);
}

TEST(Biquadratic, ConductorDiscriminantProduct) {
  const std::vector<long> rads = {-1, 2, -2, 3, -3, 5, -5, 6, -7, 10, -11, 13, -15, 21, 30, -33, 35, -39};
  for (long x : rads)
    for (long y : rads) {
      Radicand a = Radicand::from_integer(x), b = Radicand::from_integer(y);
      if (a == b) continue;
      FieldDescriptor K = biquadratic_field(a, b);
      BigInt prod = 1;
      for (const auto& s : K.subfields) {
        prod *= abs(s.disc);
        EXPECT_EQ(K.abs_disc() % abs(s.disc), 0);
      }
      EXPECT_EQ(K.abs_disc(), prod);
      EXPECT_EQ(K.r1 + 2 * K.r2, K.degree);
    }
}

TEST(Genus, Values) {
  EXPECT_NEAR(genus(biquadratic_field(R({5}), R({-1, 5}))), std::log(20.0), 1e-12);
  EXPECT_NEAR(genus(biquadratic_field(kEx1, R({-1, 3}))), std::log(892371480.0), 1e-9);
  EXPECT_NEAR(genus(biquadratic_field(kEx1, R({-1, 3}))), 20.6094, 1e-4);
  EXPECT_EQ(genus(rational_field()), 0.0);
}

TEST(Genus, HalfLogOfEmptyTameConductor) {
  FieldDescriptor K = biquadratic_field(kEx1, R({-1, 3}));
  EXPECT_NEAR(genus(K), 0.5 * disc_with_tame_conductor(K, {}, 2).log(), 1e-12);
}

TEST(TameConductor, Products) {
  FieldDescriptor K = biquadratic_field(R({5}), R({-1, 5}));
  EXPECT_EQ(disc_with_tame_conductor(K, {}, 2).value(), 400);
  PlaceSet S{{{7, std::nullopt, 1, false}, {11, std::nullopt, 1, false}}};
  EXPECT_EQ(disc_with_tame_conductor(K, S, 2).value(), 30800);
  PlaceSet bad{{{4, std::nullopt, 1, false}}};
  EXPECT_THROW(disc_with_tame_conductor(K, bad, 2), Error);
}

TEST(LocalFactorSum, AddsPlaces) {
  PlaceSet S{{{7, std::nullopt, 2, false}, {13, std::nullopt, 1, false}}};
  EXPECT_EQ(local_factor_sum(S, 2), 3u * 2 + 2u);
}

TEST(SplittingType, Examples) {
  FieldDescriptor k = quadratic_field(R({-1, 3}));
  EXPECT_EQ(splitting_type(k, 7), SplitType::Split);
  EXPECT_EQ(splitting_type(k, 3), SplitType::Ramified);
  EXPECT_EQ(splitting_type(k, 5), SplitType::Inert);
  EXPECT_EQ(splitting_type(k, 2), SplitType::Inert);
}

TEST(SplittingType, RamifiedExactlyOnDiscriminantPrimes) {
  for (long d : {-1155L, 2L, -7L, 30L, 221L}) {
    FieldDescriptor k = quadratic_field(Radicand::from_integer(d));
    BigInt D = k.subfields.front().disc;
    for (std::uint64_t ell : sieve_primes(300))
      EXPECT_EQ(splitting_type(k, ell) == SplitType::Ramified, D % ell == 0) << d << " " << ell;
  }
}

TEST(EnumerateNorms, Example1Field) {
  FieldDescriptor K = biquadratic_field(kEx1, R({-1, 3}));
  auto norms = enumerate_norms(K, 43);
  std::vector<std::pair<long, unsigned>> head;
  for (const auto& nc : norms)
    if (nc.q.value <= 43) head.emplace_back(nc.q.value.convert_to<long>(), nc.count);
  std::vector<std::pair<long, unsigned>> expect = {{4, 1}, {7, 2}, {9, 1}, {13, 2}, {19, 2}, {25, 1}, {31, 4}, {37, 4}, {43, 4}};
  EXPECT_EQ(head, expect);
  for (std::size_t i = 1; i < norms.size(); ++i) EXPECT_LE(norms[i - 1].q.value, norms[i].q.value);
}

TEST(EnumerateNorms, QuadraticAndEmpty) {
  FieldDescriptor k = quadratic_field(R({-1, 3}));
  auto n = enumerate_norms(k, 7);
  ASSERT_EQ(n.size(), 4u);
  EXPECT_EQ(n[0].q.value, 3);
  EXPECT_EQ(n[0].count, 1u);
  EXPECT_EQ(n[1].q.value, 4);
  EXPECT_EQ(n[2].q.value, 7);
  EXPECT_EQ(n[2].count, 2u);
  EXPECT_EQ(n[3].q.value, 25);
  EXPECT_TRUE(enumerate_norms(k, 1).empty());
}

TEST(EnumerateNorms, LocalZetaFactorisation) {
  const std::vector<std::pair<long, long>> pairs = {{-1, 2}, {-1, 3}, {5, -5}, {2, 3}, {-3, 7}, {6, -10}, {13, -39}};
  for (auto [x, y] : pairs) {
    FieldDescriptor K = biquadratic_field(Radicand::from_integer(x), Radicand::from_integer(y));
    for (std::uint64_t ell : sieve_primes(200)) {
      auto above = primes_above(K, ell);
      EXPECT_EQ(local_zeta_lhs(above), local_zeta_rhs(K, ell)) << x << "," << y << " at " << ell;
      unsigned total = 0, ram = 0;
      for (const auto& s : K.subfields) ram += s.split(ell) == SplitType::Ramified;
      unsigned e = ram == 0 ? 1 : (ram == 2 ? 2 : 4);
      for (const auto& nc : above) total += nc.count * nc.q.m * e;
      EXPECT_EQ(total, K.degree);
    }
  }
}

TEST(RamifiedPlaceCount, OverRationals) {
  FieldDescriptor Q = rational_field();
  EXPECT_EQ(ramified_place_count(Q, R({-1, 3, 5, 7, 11}), 2), 5u);
  EXPECT_EQ(ramified_place_count(Q, R({2}), 2), 1u);
  EXPECT_EQ(ramified_place_count(Q, Radicand::from_integer(-4620), 2), 5u);
  EXPECT_EQ(ramified_place_count(Q, R({-1}), 2), 2u);
  EXPECT_THROW(ramified_place_count(Q, R({2}), 3), Error);
}

TEST(RamifiedPlaceCount, OverRealQuadratic) {
  FieldDescriptor k = quadratic_field(kEx1);
  EXPECT_EQ(ramified_place_count(k, R({-1, 3}), 2), 3u);
  FieldDescriptor k2 = quadratic_field(R({47, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151}));
  EXPECT_EQ(ramified_place_count(k2, R({-1, 2, 5, 11, 13, 17, 19, 23, 3, 7, 29, 31, 37, 41, 43, 53}), 2), 24u);
  EXPECT_THROW(ramified_place_count(k, kEx1, 2), Error);
}

TEST(Delta, RootsOfUnity) {
  EXPECT_EQ(quadratic_field(R({5})).delta(2), 1);
  EXPECT_EQ(biquadratic_field(R({5}), R({-1, 3})).delta(3), 1);
  EXPECT_EQ(biquadratic_field(R({5}), R({-1})).delta(3), 0);
  EXPECT_EQ(quadratic_field(R({-1, 3})).delta(5), 0);
}
