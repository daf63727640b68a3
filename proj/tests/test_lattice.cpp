#include <gtest/gtest.h>

#include <set>

#include "ovs/lattice.hpp"
#include "support.hpp"

using namespace ovs;
namespace fx = ovs::fixtures;

namespace {

Lattice z1(const Rational &r) { return Lattice::scaled(1, r); }

RatVec v(std::initializer_list<Rational> xs) { return RatVec(xs); }

}  // namespace

TEST(Lattice, CanonicalBasisIsBasisIndependent) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice l = fx::random_lattice(rng, n);
    RatMatrix other = l.basis() * to_rational(fx::random_unimodular(rng, n));
    ASSERT_EQ(Lattice(other), l);
    ASSERT_EQ(Lattice(other.hconcat(l.basis())), l);
  }
}

TEST(Lattice, RankDeficientGeneratorsRaise) {
  RatMatrix g{{Rational(1), Rational(2)}, {Rational(1), Rational(2)}};
  EXPECT_THROW(Lattice{g}, RankError);
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(z1(Rational(1, 5))), z1(5));
  EXPECT_EQ(dual(Lattice::diagonal({Rational(2), Rational(1, 3)})),
            Lattice::diagonal({Rational(1, 2), Rational(3)}));
}

TEST(Dual, InvolutionAndCovolume) {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 100; ++it) {
    Lattice l = fx::random_lattice(rng, fx::uniform(rng, 1, 3));
    Lattice d = dual(l);
    ASSERT_EQ(dual(d), l);
    ASSERT_EQ(d.covolume() * l.covolume(), Rational(1));
    for (const auto &x : l.basis().columns())
      for (const auto &y : d.basis().columns()) ASSERT_TRUE(dot(x, y).is_integer());
  }
}

TEST(SumIntersect, Examples) {
  EXPECT_EQ(intersect(z1(Rational(1, 2)), z1(Rational(1, 3))), z1(1));
  EXPECT_EQ(sum(z1(2), z1(3)), z1(1));
  std::vector<Lattice> dilates;
  for (int j = -1; j <= 1; ++j) dilates.push_back(z1(pow(Rational(3, 2), j) * Rational(5)));
  EXPECT_EQ(sum(dilates), z1(Rational(5, 6)));
}

TEST(SumIntersect, OneDimensionalGcdLcm) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 200; ++it) {
    Rational a(fx::uniform(rng, 1, 40), fx::uniform(rng, 1, 12));
    Rational b(fx::uniform(rng, 1, 40), fx::uniform(rng, 1, 12));
    BigInt L = lcm(a.den(), b.den());
    BigInt an = (a * Rational(L)).num(), bn = (b * Rational(L)).num();
    ASSERT_EQ(sum(z1(a), z1(b)), z1(Rational(gcd(an, bn), L)));
    ASSERT_EQ(intersect(z1(a), z1(b)), z1(Rational(lcm(an, bn), L)));
  }
}

TEST(SumIntersect, IntersectionMatchesPointwiseMembership) {
  std::mt19937_64 rng(34);
  for (int it = 0; it < 30; ++it) {
    Lattice a = fx::random_lattice(rng, 2, 3, 4), b = fx::random_lattice(rng, 2, 3, 4);
    Lattice c = intersect(a, b);
    ASSERT_TRUE(is_sublattice(c, a));
    ASSERT_TRUE(is_sublattice(c, b));
    for (long i = -6; i <= 6; ++i)
      for (long j = -6; j <= 6; ++j) {
        RatVec p = a.basis() * RatVec{Rational(i), Rational(j)};
        ASSERT_EQ(c.member(p), b.member(p));
      }
  }
}

TEST(SumIntersect, DualOfIntersectionIsSumOfDuals) {
  std::mt19937_64 rng(35);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice a = fx::random_lattice(rng, n), b = fx::random_lattice(rng, n);
    ASSERT_EQ(dual(intersect(a, b)), sum(dual(a), dual(b)));
  }
}

TEST(Membership, Examples) {
  EXPECT_FALSE(member(z1(2), v({3})));
  EXPECT_TRUE(member(z1(2), v({-4})));
  EXPECT_TRUE(is_sublattice(z1(6), z1(Rational(3, 2))));
  EXPECT_FALSE(is_sublattice(z1(Rational(3, 2)), z1(6)));
}

TEST(QuotientOrder, Examples) {
  EXPECT_EQ(quotient_order(Lattice::scaled(2, Rational(1, 2)), Lattice::integer(2)), 4);
  EXPECT_EQ(quotient_order(z1(Rational(1, 5)), z1(1)), 5);
  EXPECT_THROW(quotient_order(z1(2), z1(3)), NotSublattice);
}

TEST(Transversal, Examples) {
  auto t = exact_transversal(Lattice::integer(2), Lattice::scaled(2, 2));
  std::vector<RatVec> expect{v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})};
  EXPECT_EQ(t, expect);
  auto t1 = exact_transversal(z1(Rational(1, 5)), z1(1));
  ASSERT_EQ(t1.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(t1[k], v({Rational(k, 5)}));
}

TEST(Transversal, CompleteAndIrredundant) {
  std::mt19937_64 rng(36);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice lambda = fx::random_lattice(rng, n, 3, 3);
    IntMatrix C = fx::random_nonsingular(rng, n, 3);
    Lattice gamma = lambda.image(lambda.basis() * to_rational(C) * inverse(lambda.basis()));
    auto reps = exact_transversal(lambda, gamma);
    ASSERT_EQ(BigInt(reps.size()), quotient_order(lambda, gamma));
    std::set<RatVec> reduced;
    for (const auto &r : reps) {
      ASSERT_TRUE(lambda.member(r));
      ASSERT_EQ(reduce_mod(gamma, r), r);
      reduced.insert(r);
    }
    ASSERT_EQ(reduced.size(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        RatVec d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = reps[i][k] - reps[j][k];
        ASSERT_FALSE(gamma.member(d));
      }
  }
}

TEST(SmithBasis, Examples) {
  auto s = smith_basis(Lattice::integer(2), Lattice::diagonal({Rational(2), Rational(4)}));
  EXPECT_EQ(s.alpha, (std::vector<BigInt>{2, 4}));
  auto s1 = smith_basis(z1(1), z1(6));
  EXPECT_EQ(s1.alpha, (std::vector<BigInt>{6}));
}

TEST(SmithBasis, AdaptedBasisProperties) {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice lambda = fx::random_lattice(rng, n, 3, 4);
    IntMatrix C = fx::random_nonsingular(rng, n, 4);
    Lattice gamma(lambda.basis() * to_rational(C));
    SmithBasis s = smith_basis(lambda, gamma);
    ASSERT_EQ(Lattice(RatMatrix::from_columns(s.v)), lambda);
    std::vector<RatVec> scaled;
    for (std::size_t i = 0; i < n; ++i) {
      RatVec c = s.v[i];
      for (auto &e : c) e *= Rational(s.alpha[i]);
      scaled.push_back(c);
    }
    ASSERT_EQ(Lattice(RatMatrix::from_columns(scaled)), gamma);
    for (std::size_t i = 0; i + 1 < n; ++i) ASSERT_TRUE(divides(s.alpha[i], s.alpha[i + 1]));
    ASSERT_EQ(Lattice(RatMatrix::from_columns(s.modified)), lambda);
    if (s.alpha[n - 1] >= 2) {
      for (const auto &w : s.modified) ASSERT_FALSE(gamma.member(w));
    }
  }
}
