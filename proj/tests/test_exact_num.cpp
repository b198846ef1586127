#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace thompson_cantor;

namespace {

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

// Product of values^m computed directly, independent of factorization.
Rational power_product(const std::vector<Rational>& values, const IntVector& m) {
  Rational out = 1;
  for (std::size_t i = 0; i < values.size(); ++i) out *= pow(values[i], m[i].convert_to<long long>());
  return out;
}

}  // namespace

TEST(Rational, StoredReduced) {
  const Rational r = make_rational(6, -4);
  EXPECT_EQ(numerator(r), -3);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_THROW(make_rational(1, 0), DomainError);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("7/15"), q(7, 15));
  EXPECT_EQ(parse_rational("-2"), q(-2));
  EXPECT_EQ(parse_rational("4/6"), q(2, 3));
  EXPECT_THROW(parse_rational("0.5"), DomainError);
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational(""), DomainError);
  EXPECT_EQ(to_string(q(1, 3)), "1/3");
  EXPECT_EQ(to_string(q(4)), "4");
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).empty());

  const auto f = factorize(q(4, 9));
  EXPECT_EQ(f.entries(), (std::map<Prime, long long>{{2, 2}, {3, -2}}));
  EXPECT_EQ(f.value(), q(4, 9));

  const auto g = factorize(q(7, 15));
  EXPECT_EQ(g.entries(), (std::map<Prime, long long>{{3, -1}, {5, -1}, {7, 1}}));
  EXPECT_EQ(g.value(), q(7, 15));
}

TEST(Factorize, RejectsNonPositive) {
  EXPECT_THROW(factorize(0), DomainError);
  EXPECT_THROW(factorize(q(-1, 2)), DomainError);
}

TEST(Factorize, LargePrimeBeyondSieve) {
  const Rational p = 1000003;  // prime, just past the sieve
  EXPECT_EQ(factorize(p)[1000003], 1);
  EXPECT_EQ(factorize(p * p * 2).value(), p * p * 2);
}

TEST(Factorize, MultiplicativeOnRandomRationals) {
  auto g = tc_test::rng(1);
  for (int i = 0; i < 300; ++i) {
    const Rational a = q(static_cast<long long>(tc_test::uniform(g, 1, 5000)), static_cast<long long>(tc_test::uniform(g, 1, 5000)));
    const Rational b = q(static_cast<long long>(tc_test::uniform(g, 1, 5000)), static_cast<long long>(tc_test::uniform(g, 1, 5000)));
    EXPECT_EQ(factorize(a * b), factorize(a) + factorize(b));
    EXPECT_EQ(factorize(a).value(), a);
  }
}

TEST(ScaleValue, Examples) {
  EXPECT_EQ(scale_value({q(1, 3), q(1, 3)}, ScaleElement(std::vector<long long>{0, 0})), 1);
  EXPECT_EQ(scale_value({q(1, 3), q(1, 3)}, ScaleElement(std::vector<long long>{2, 1})), q(1, 27));
  EXPECT_EQ(scale_value({q(1, 4), q(1, 2)}, ScaleElement(std::vector<long long>{1, -2})), 1);
  EXPECT_THROW(scale_value({q(1, 3)}, ScaleElement(2)), DomainError);
}

TEST(ScaleValue, Homomorphism) {
  auto g = tc_test::rng(2);
  const std::vector<Rational> ratios{q(1, 4), q(1, 2), q(2, 7)};
  for (int i = 0; i < 200; ++i) {
    ScaleElement a(3), b(3);
    for (std::size_t j = 0; j < 3; ++j) {
      a[j] = static_cast<long long>(tc_test::uniform(g, 0, 12)) - 6;
      b[j] = static_cast<long long>(tc_test::uniform(g, 0, 12)) - 6;
    }
    EXPECT_EQ(scale_value(ratios, a + b), scale_value(ratios, a) * scale_value(ratios, b));
    EXPECT_EQ(scale_value(ratios, -a) * scale_value(ratios, a), 1);
  }
}

TEST(RelationLattice, Examples) {
  EXPECT_TRUE(relation_lattice({q(1, 3), q(1, 5)}).empty());
  EXPECT_EQ(relation_lattice({q(1, 4), q(1, 2)}), (LatticeBasis{{1, -2}}));
  EXPECT_EQ(relation_lattice({q(1, 3), q(1, 3)}), (LatticeBasis{{1, -1}}));
  EXPECT_THROW(relation_lattice({q(1, 3), 0}), DomainError);
}

TEST(RelationLattice, OneIsAFreeRelation) {
  EXPECT_EQ(relation_lattice({1, q(1, 2)}), (LatticeBasis{{1, 0}}));
}

// Every relation found by exhaustive search over a box lies in the span of
// the computed basis, and every basis vector is a relation.
TEST(RelationLattice, BruteForceBoxOracle) {
  const std::vector<std::vector<Rational>> cases{
      {q(1, 4), q(1, 2), q(1, 8)},
      {q(1, 3), q(1, 9), q(1, 5)},
      {q(2, 3), q(3, 2), q(4, 9)},
      {q(1, 6), q(1, 2), q(1, 3)},
      {q(7, 15), q(1, 3), q(1, 5)},
      {q(1, 12), q(1, 18), q(2, 3)},
  };
  const int r = 4;
  for (const auto& values : cases) {
    const LatticeBasis basis = relation_lattice(values);
    for (const auto& b : basis) EXPECT_EQ(power_product(values, b), 1);
    std::size_t found = 0;
    IntVector m(3);
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y)
        for (int z = -r; z <= r; ++z) {
          m = {x, y, z};
          const bool relation = power_product(values, m) == 1;
          EXPECT_EQ(lattice_contains(basis, m), relation) << x << "," << y << "," << z;
          found += relation;
        }
    EXPECT_GE(found, 1u);
  }
}

TEST(RelationLattice, RandomCommensurableFamilies) {
  auto g = tc_test::rng(3);
  const std::vector<long long> bases{2, 3, 5, 6, 10};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> values;
    for (int i = 0; i < 4; ++i)
      values.push_back(pow(q(1, bases[tc_test::uniform(g, 0, bases.size() - 1)]), static_cast<long long>(tc_test::uniform(g, 1, 3))));
    const LatticeBasis basis = relation_lattice(values);
    for (const auto& b : basis) EXPECT_EQ(power_product(values, b), 1);
    // Rank check: 4 values spanning at most 3 primes leave a kernel of rank >= 1.
    EXPECT_GE(basis.size(), 1u);
    IntVector m(4);
    for (int i = 0; i < 200; ++i) {
      for (auto& v : m) v = static_cast<long long>(tc_test::uniform(g, 0, 6)) - 3;
      EXPECT_EQ(lattice_contains(basis, m), power_product(values, m) == 1);
    }
  }
}

TEST(HermiteNormalForm, CanonicalForSameLattice) {
  const LatticeBasis a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const LatticeBasis b{{2, 4, 4}, {-4, 10, 16}, {-2, 8, 8}};
  EXPECT_EQ(hermite_normal_form(a), hermite_normal_form(b));
  for (const auto& row : hermite_normal_form(a)) EXPECT_FALSE(std::all_of(row.begin(), row.end(), [](const Integer& v) { return v == 0; }));
}
