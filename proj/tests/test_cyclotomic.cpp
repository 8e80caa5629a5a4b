#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ffdist/cyclotomic.hpp"
#include "ffdist/error.hpp"
#include "oracle.hpp"

using ffdist::Cyclotomic;
using ffdist::Rational;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Cyclotomic random_value(std::mt19937_64& rng, unsigned p) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  std::vector<Rational> raw(p);
  for (auto& c : raw) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  return Cyclotomic::canon(p, raw);
}

}  // namespace

TEST(Cyclotomic, CanonReducesLastCoefficient) {
  EXPECT_EQ(Cyclotomic::canon(3, q({0, 1, 1})).coeffs(), q({-1, 0, 0}));
  EXPECT_TRUE(Cyclotomic::canon(3, q({1, 1, 1})).is_zero());
  EXPECT_EQ(Cyclotomic::canon(5, q({0, 0, 0, 0, 1})).coeffs(), q({-1, -1, -1, -1, 0}));
}

TEST(Cyclotomic, CanonRejectsBadInput) {
  EXPECT_THROW(Cyclotomic::canon(3, q({1, 2})), ffdist::InvalidArgument);
  EXPECT_THROW(Cyclotomic::canon(9, q({1, 2, 3, 4, 5, 6, 7, 8, 9})), ffdist::InvalidArgument);
  EXPECT_THROW(Cyclotomic::canon(2, q({1, 2})), ffdist::InvalidArgument);
  EXPECT_THROW(Cyclotomic(4), ffdist::InvalidArgument);
}

TEST(Cyclotomic, ProductExamples) {
  const auto g = Cyclotomic::root(3, 1) - Cyclotomic::root(3, 2);
  EXPECT_EQ((g * g).coeffs(), q({-3, 0, 0}));
  EXPECT_EQ(Cyclotomic::root(3, 1) * Cyclotomic::root(3, 2), Cyclotomic::from_rational(3, 1));

  std::mt19937_64 rng(11);
  for (unsigned p : {3u, 5u, 7u}) {
    const auto a = random_value(rng, p);
    EXPECT_EQ(ffdist::mul(a, Cyclotomic::from_rational(p, 1)), a);
  }
  EXPECT_THROW(Cyclotomic::root(3, 1) * Cyclotomic::root(5, 1), ffdist::InvalidArgument);
  auto x = Cyclotomic::root(3, 1);
  EXPECT_THROW(x += Cyclotomic::root(7, 1), ffdist::InvalidArgument);
}

TEST(Cyclotomic, ComplexEmbeddingExamples) {
  const auto z3 = (Cyclotomic::root(3, 1) - Cyclotomic::root(3, 2)).to_complex();
  EXPECT_NEAR(z3.real(), 0.0, 1e-12);
  EXPECT_NEAR(z3.imag(), 1.7320508, 1e-7);
  EXPECT_EQ(Cyclotomic(5).to_complex(), std::complex<double>(0.0, 0.0));
  const auto z5 = (Cyclotomic::root(5, 1) + Cyclotomic::root(5, 4) - Cyclotomic::root(5, 2) -
                   Cyclotomic::root(5, 3))
                      .to_complex();
  EXPECT_NEAR(z5.real(), 2.2360680, 1e-7);
  EXPECT_NEAR(z5.imag(), 0.0, 1e-12);
}

TEST(Cyclotomic, RootsAndRotation) {
  for (unsigned p : {3u, 5u, 7u, 11u}) {
    EXPECT_EQ(Cyclotomic::root(p, p), Cyclotomic::from_rational(p, 1));
    EXPECT_EQ(Cyclotomic::root(p, -1), Cyclotomic::root(p, p - 1));
    Cyclotomic sum(p);
    for (unsigned e = 0; e < p; ++e) sum += Cyclotomic::root(p, e);
    EXPECT_TRUE(sum.is_zero());
    std::mt19937_64 rng(p);
    const auto a = random_value(rng, p);
    for (int e = -3; e < 2 * static_cast<int>(p); ++e) {
      EXPECT_EQ(a.times_root(e), a * Cyclotomic::root(p, e));
    }
  }
}

TEST(Cyclotomic, ExponentCountsMatchOracle) {
  std::mt19937_64 rng(5);
  for (unsigned p : {3u, 5u, 7u}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::int64_t> counts(p);
      oracle::ZetaSum ref(p);
      std::uniform_int_distribution<std::int64_t> dist(-5, 20);
      for (unsigned e = 0; e < p; ++e) {
        counts[e] = dist(rng);
        ref.add(e, counts[e]);
      }
      ref.scale(Rational(1, 7));
      EXPECT_TRUE(oracle::same(ref, Cyclotomic::from_exponent_counts(p, counts, Rational(1, 7))));
    }
  }
}

TEST(Cyclotomic, RationalValues) {
  EXPECT_TRUE(Cyclotomic::from_rational(5, Rational(3, 2)).is_rational());
  EXPECT_EQ(Cyclotomic::from_rational(5, Rational(3, 2)).rational_value(), Rational(3, 2));
  EXPECT_FALSE(Cyclotomic::root(5, 1).is_rational());
  EXPECT_THROW(Cyclotomic::root(5, 2).rational_value(), ffdist::IdentityViolation);
  // zeta + zeta^2 = -1 at p = 3 is rational even though written with roots.
  EXPECT_EQ((Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2)).rational_value(), Rational(-1));
}

TEST(Cyclotomic, Formatting) {
  EXPECT_EQ((Cyclotomic::root(3, 1) * Rational(1, 2)).to_string(), "0;1/2");
  EXPECT_EQ(ffdist::to_string(Rational(-2, 3)), "-2/3");
  EXPECT_EQ(ffdist::to_string(Rational(5)), "5");
}

class CyclotomicProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(CyclotomicProperties, RingAxiomsOnRandomTriples) {
  const unsigned p = GetParam();
  std::mt19937_64 rng(1000 + p);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_value(rng, p), b = random_value(rng, p), c = random_value(rng, p);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, Cyclotomic(p));
    ASSERT_EQ(a + (-a), Cyclotomic(p));
  }
}

TEST_P(CyclotomicProperties, ConjugationAndEmbedding) {
  const unsigned p = GetParam();
  std::mt19937_64 rng(2000 + p);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_value(rng, p), b = random_value(rng, p);
    ASSERT_EQ(a.conj().conj(), a);
    ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
    ASSERT_LE(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 1e-9);
    ASSERT_LE(std::abs((a * a.conj()).to_complex().imag()), 1e-9);
    const auto za = a.to_complex(), zb = b.to_complex();
    ASSERT_LE(std::abs((a * b).to_complex() - za * zb), 1e-9 * (1 + std::abs(za) * std::abs(zb)));
  }
}

TEST_P(CyclotomicProperties, ProductAgreesWithUnreducedOracle) {
  const unsigned p = GetParam();
  std::mt19937_64 rng(3000 + p);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_value(rng, p), b = random_value(rng, p);
    oracle::ZetaSum x(p), y(p);
    for (unsigned j = 0; j + 1 < p; ++j) {
      x.c[j] = a.coeffs()[j];
      y.c[j] = b.coeffs()[j];
    }
    ASSERT_TRUE(oracle::same(x * y, a * b));
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, CyclotomicProperties, ::testing::Values(3u, 5u, 7u));
