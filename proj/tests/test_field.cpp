#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ffdist/error.hpp"
#include "ffdist/field.hpp"
#include "oracle.hpp"

using ffdist::Field;
using ffdist::FieldElement;

namespace {

const std::vector<unsigned> kOddPrimePowers = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};

// Remainder of a by monic b over GF(p); both constant-first.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t deg = a.size(); deg-- > db;) {
    const unsigned lead = a[deg];
    if (!lead) continue;
    for (std::size_t i = 0; i <= db; ++i) a[deg - db + i] = (a[deg - db + i] + (p - lead) * b[i]) % p;
  }
  a.resize(db);
  return a;
}

// Trial division by every monic polynomial of degree 1..s/2.
bool irreducible(const std::vector<unsigned>& f, unsigned p) {
  const unsigned s = static_cast<unsigned>(f.size()) - 1;
  for (unsigned deg = 1; 2 * deg <= s; ++deg) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<unsigned> g(deg + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < deg; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[deg] = 1;
      const auto r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned v) { return v == 0; })) return false;
    }
  }
  return true;
}

// First monic irreducible when coefficient tuples (c_0, ..., c_{s-1}) are
// scanned in increasing order with c_0 most significant.
std::vector<unsigned> first_irreducible(unsigned p, unsigned s) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < s; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<unsigned> f(s + 1);
    std::uint64_t c = code;
    for (unsigned i = s; i-- > 0;) {
      f[i] = c % p;
      c /= p;
    }
    f[s] = 1;
    if (irreducible(f, p)) return f;
  }
  return {};
}

}  // namespace

TEST(Field, ConstructionExamples) {
  const auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3.q(), 3u);
  EXPECT_EQ(f3.modulus(), (std::vector<unsigned>{0, 1}));
  const auto f9 = Field::make(3, 2);
  EXPECT_EQ(f9.q(), 9u);
  EXPECT_EQ(f9.modulus(), (std::vector<unsigned>{1, 0, 1}));
  EXPECT_THROW(Field::make(2, 1), ffdist::InvalidArgument);
  EXPECT_THROW(Field::make(9, 1), ffdist::InvalidArgument);
  EXPECT_THROW(Field::make(3, 0), ffdist::InvalidArgument);
}

TEST(Field, ModulusMatchesScanOracle) {
  for (auto [p, s] : std::vector<std::pair<unsigned, unsigned>>{
           {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}, {3, 5}}) {
    EXPECT_EQ(Field::make(p, s).modulus(), first_irreducible(p, s)) << p << "^" << s;
  }
  EXPECT_EQ(Field::make(3, 3).modulus(), (std::vector<unsigned>{1, 0, 2, 1}));
}

TEST(Field, FromOrder) {
  const auto f = Field::from_order(125);
  EXPECT_EQ(f.p(), 5u);
  EXPECT_EQ(f.s(), 3u);
  for (std::uint64_t bad : {0ull, 1ull, 2ull, 4ull, 6ull, 15ull, 45ull}) {
    EXPECT_THROW(Field::from_order(bad), ffdist::InvalidArgument) << bad;
  }
}

TEST(Field, UserModulus) {
  const auto f = Field::with_modulus(3, {2, 1, 1});  // X^2 + X + 2
  EXPECT_EQ(f.q(), 9u);
  const oracle::PolyField ref(3, {2, 1, 1});
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) EXPECT_EQ(f.mul({a}, {b}).index, ref.mul(a, b));
  EXPECT_THROW(Field::with_modulus(3, {2, 0, 1}), ffdist::InvalidArgument);  // (X-1)(X+1)
  EXPECT_THROW(Field::with_modulus(3, {1, 0, 2}), ffdist::InvalidArgument);  // not monic
}

TEST(Field, ArithmeticExamples) {
  const auto f5 = Field::make(5, 1);
  EXPECT_EQ(f5.inv({2}).index, 3u);
  const auto f9 = Field::make(3, 2);
  const unsigned x_coeffs[] = {0, 1};
  const auto x = f9.from_coeffs(x_coeffs);
  EXPECT_EQ(f9.mul(x, x), f9.from_int(-1));
  EXPECT_EQ(f9.mul(x, x).index, 2u);
  const auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3.add({2}, {2}).index, 1u);
  EXPECT_THROW(f3.inv(f3.zero()), ffdist::InvalidArgument);
  EXPECT_THROW(f3.element(3), ffdist::InvalidArgument);
}

TEST(Field, TraceExamples) {
  const auto f7 = Field::make(7, 1);
  for (std::uint32_t a = 0; a < 7; ++a) EXPECT_EQ(f7.trace({a}), a);
  EXPECT_EQ(Field::make(3, 2).trace({1}), 2u);
  for (unsigned q : kOddPrimePowers) EXPECT_EQ(Field::from_order(q).trace({0}), 0u);
}

TEST(Field, QuadraticCharacterExamples) {
  const auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3.quad_char({2}), -1);
  const auto f5 = Field::make(5, 1);
  EXPECT_EQ(f5.quad_char({4}), 1);
  EXPECT_EQ(f5.quad_char(f5.from_int(-1)), 1);
  for (unsigned q : kOddPrimePowers) {
    const auto f = Field::from_order(q);
    EXPECT_EQ(f.quad_char(f.one()), 1);
    EXPECT_EQ(f.quad_char(f.zero()), 0);
  }
}

class FieldExhaustive : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldExhaustive, ArithmeticMatchesSchoolbook) {
  const auto f = Field::from_order(GetParam());
  const oracle::PolyField ref(f.p(), f.modulus());
  for (std::uint32_t a = 0; a < f.q(); ++a) {
    ASSERT_EQ(f.neg({a}).index, ref.neg(a));
    for (std::uint32_t b = 0; b < f.q(); ++b) {
      ASSERT_EQ(f.add({a}, {b}).index, ref.add(a, b));
      ASSERT_EQ(f.mul({a}, {b}).index, ref.mul(a, b));
    }
    if (a) {
      ASSERT_EQ(f.mul({a}, f.inv({a})), f.one());
      ASSERT_EQ(f.inv({a}).index, ref.inv(a));
    }
    ASSERT_EQ(f.coeffs({a}), ref.decode(a));
    ASSERT_EQ(f.pow({a}, 5).index, ref.pow(a, 5));
  }
}

TEST_P(FieldExhaustive, TraceIsLinearAndBalanced) {
  const auto f = Field::from_order(GetParam());
  const oracle::PolyField ref(f.p(), f.modulus());
  std::map<unsigned, unsigned> fiber;
  for (std::uint32_t a = 0; a < f.q(); ++a) {
    const unsigned tr = f.trace({a});
    ASSERT_EQ(tr, ref.trace(a));
    ASSERT_LT(tr, f.p());
    ++fiber[tr];
    for (std::uint32_t b = 0; b < f.q(); ++b) {
      ASSERT_EQ(f.trace(f.add({a}, {b})), (tr + f.trace({b})) % f.p());
      ASSERT_EQ(f.trace_of_product({a}, {b}), f.trace(f.mul({a}, {b})));
    }
    for (unsigned c = 0; c < f.p(); ++c) {
      ASSERT_EQ(f.trace(f.mul(f.from_int(c), {a})), (c * tr) % f.p());
    }
  }
  ASSERT_EQ(fiber.size(), f.p());
  for (auto [value, size] : fiber) ASSERT_EQ(size, f.q() / f.p()) << value;
}

TEST_P(FieldExhaustive, QuadraticCharacter) {
  const auto f = Field::from_order(GetParam());
  const oracle::PolyField ref(f.p(), f.modulus());
  unsigned squares = 0;
  for (std::uint32_t a = 1; a < f.q(); ++a) {
    ASSERT_EQ(f.quad_char({a}), ref.eta(a));
    squares += f.quad_char({a}) == 1;
    for (std::uint32_t b = 1; b < f.q(); ++b) {
      ASSERT_EQ(f.quad_char(f.mul({a}, {b})), f.quad_char({a}) * f.quad_char({b}));
    }
  }
  ASSERT_EQ(squares, (f.q() - 1) / 2);
}

TEST_P(FieldExhaustive, PrimitiveElementGeneratesGroup) {
  const auto f = Field::from_order(GetParam());
  std::set<std::uint32_t> seen;
  auto x = f.one();
  for (std::uint32_t i = 0; i + 1 < f.q(); ++i) {
    seen.insert(x.index);
    x = f.mul(x, f.primitive_element());
  }
  ASSERT_EQ(x, f.one());
  ASSERT_EQ(seen.size(), f.q() - 1);
}

INSTANTIATE_TEST_SUITE_P(OrdersUpTo49, FieldExhaustive, ::testing::ValuesIn(kOddPrimePowers));

TEST(FieldProperties, RandomPairsSatisfyFieldAxioms) {
  std::mt19937_64 rng(17);
  for (unsigned q : {3u, 5u, 7u, 9u, 25u, 27u, 49u, 81u, 121u, 343u}) {
    const auto f = Field::from_order(q);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int i = 0; i < 200; ++i) {
      const FieldElement a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      ASSERT_EQ(f.sub(f.add(a, b), b), a);
      ASSERT_EQ(f.pow(a, f.q()), a);  // Frobenius fixes GF(q)
      if (b.index) {
        ASSERT_EQ(f.mul(f.div(a, b), b), a);
      }
    }
  }
}

TEST(Space, VectorOpsExamples) {
  auto f3 = std::make_shared<const Field>(Field::make(3, 1));
  const ffdist::Space space(f3, 2);
  const ffdist::Point x{{1}, {2}};
  EXPECT_EQ(space.norm(x).index, 2u);
  EXPECT_EQ(space.zeros(x), 0u);
  EXPECT_EQ(space.norm(space.origin()).index, 0u);
  EXPECT_EQ(space.zeros(space.origin()), 2u);
  const ffdist::Point y{{0}, {2}};
  EXPECT_EQ(space.zeros(y), 1u);
  EXPECT_EQ(space.norm(y).index, 1u);
  EXPECT_EQ(space.dot(x, y).index, 1u);
  const auto ops = space.vector_ops(x, y);
  EXPECT_EQ(ops.dot.index, 1u);
  EXPECT_THROW(space.dot(x, ffdist::Point{{1}}), ffdist::InvalidArgument);
}

TEST(Space, EnumerationOrder) {
  auto f3 = std::make_shared<const Field>(Field::make(3, 1));
  const auto line = ffdist::enumerate_vectors(f3, 1);
  ASSERT_EQ(line.size(), 3u);
  for (std::uint32_t i = 0; i < 3; ++i) EXPECT_EQ(line[i], ffdist::Point{FieldElement{i}});
  const auto plane = ffdist::enumerate_vectors(f3, 2);
  ASSERT_EQ(plane.size(), 9u);
  EXPECT_EQ(plane.front(), (ffdist::Point{{0}, {0}}));
  EXPECT_EQ(plane[1], (ffdist::Point{{0}, {1}}));
  EXPECT_EQ(plane.back(), (ffdist::Point{{2}, {2}}));
  auto f9 = std::make_shared<const Field>(Field::make(3, 2));
  const ffdist::Space cube(f9, 3);
  EXPECT_EQ(cube.size(), 729u);
  EXPECT_EQ(ffdist::enumerate_vectors(f9, 3).size(), 729u);
  for (std::uint64_t i = 0; i < cube.size(); ++i) ASSERT_EQ(cube.index(cube.point(i)), i);
}

TEST(Space, CapIsEnforced) {
  auto f = std::make_shared<const Field>(Field::make(11, 1));
  EXPECT_THROW(ffdist::Space(f, 6), ffdist::CapExceeded);
  EXPECT_NO_THROW(ffdist::Space(f, 5));
  EXPECT_THROW(ffdist::Space(f, 3, 1000), ffdist::CapExceeded);
  EXPECT_THROW(ffdist::Space(f, 0), ffdist::InvalidArgument);
}
