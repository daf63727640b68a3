#include <gtest/gtest.h>

#include <cmath>

#include "ovs/approx.hpp"
#include "support.hpp"

using namespace ovs;
namespace fx = ovs::fixtures;

namespace {

RatMatrix scalar(const Rational &a) { return RatMatrix{{a}}; }

Lattice z1(const Rational &r) { return Lattice::scaled(1, r); }

}  // namespace

TEST(ApproxDual, IrrationalGeneratorExample) {
  std::vector<std::vector<double>> F{{std::sqrt(2.0)}};
  EXPECT_FALSE(approx_dual_member(F, 0.01, std::vector<double>{1.0}));
  EXPECT_TRUE(approx_dual_member(F, 0.01, std::vector<double>{std::sqrt(2.0)}));
}

TEST(ApproxDual, ExactRationalPairing) {
  std::vector<RatVec> F{{Rational(1, 3)}};
  EXPECT_TRUE(approx_dual_member(F, Rational(0), RatVec{Rational(6)}));
  EXPECT_FALSE(approx_dual_member(F, Rational(0), RatVec{Rational(5)}));
  EXPECT_TRUE(approx_dual_member(F, Rational(1, 3), RatVec{Rational(5)}));
  EXPECT_FALSE(approx_dual_member(F, Rational(1, 3) - Rational(1, 1000), RatVec{Rational(5)}));
}

TEST(ApproxDual, DecomposeReturnsSmallestValidShift) {
  std::vector<RatVec> F{{Rational(1, 3)}};
  auto z = approx_dual_decompose(F, Rational(0), RatVec{Rational(5)}, 10);
  ASSERT_TRUE(z.has_value());
  // brute force: valid z satisfy 3 | (5 - z)
  long best = 100;
  for (long c = -10; c <= 10; ++c)
    if ((5 - c) % 3 == 0 && std::labs(c) < std::labs(best)) best = c;
  EXPECT_EQ((*z)[0], best);
  EXPECT_EQ((*z)[0], -1);
  // radius too small for any valid shift
  std::vector<RatVec> F2{{Rational(1, 7)}};
  EXPECT_FALSE(approx_dual_decompose(F2, Rational(0), RatVec{Rational(1, 2)}, 3).has_value());
}

TEST(ApproxDual, SmallToleranceRecoversExactDual) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice l = fx::random_lattice(rng, n);
    auto F = l.basis().columns();
    Lattice d = dual(l);
    for (int p = 0; p < 40; ++p) {
      RatVec x(n);
      for (auto &c : x) c = fx::random_rational(rng, 20, 9);
      if (p % 2 == 0) {
        RatVec c(n);
        for (auto &ci : c) ci = Rational(fx::uniform(rng, -5, 5));
        x = d.basis() * c;
      }
      ASSERT_EQ(approx_dual_member(F, Rational(1, 1000000), x), d.member(x));
    }
  }
}

TEST(Constellation, ThreeScalePairsHaveOneHundredTwentyFivePoints) {
  auto K = multiscale_constellation(scalar(Rational(3, 2)), z1(Rational(1, 5)), 1, 0.01);
  EXPECT_EQ(K.size(), 125);
  auto cov = coverage(K);
  EXPECT_TRUE(cov.uniform());
  for (const auto &c : cov.counts) EXPECT_EQ(c, std::vector<std::size_t>(5, 25));
}

TEST(Constellation, FailsWhenTheCosetsCannotBeReached) {
  EXPECT_THROW(multiscale_constellation(scalar(Rational(3, 2)), z1(Rational(1, 2)), 1, 0.01),
               HypothesisUnverifiable);
  ConstellationOptions opts;
  opts.search_lattice = z1(3);
  opts.max_candidates = 5000;
  EXPECT_THROW(multiscale_constellation(scalar(Rational(3, 2)), z1(Rational(1, 2)), 1, 0.01, opts),
               HypothesisUnverifiable);
}

TEST(Constellation, CustomSearchGridYieldsApproximatePoints) {
  // -3/7 and 3/7 are 1/14 away from 1/2 + Z; the norm tie goes to the lexicographically smaller
  std::vector<std::pair<Lattice, Lattice>> pairs{{z1(Rational(1, 2)), z1(1)}};
  ConstellationOptions opts;
  opts.search_lattice = z1(Rational(1, 7));
  auto K = build_constellation(pairs, 0.1, opts);
  ASSERT_EQ(K.factors[0].size(), 2u);
  EXPECT_EQ(*K.factors[0][1].exact, (RatVec{Rational(-3, 7)}));
  EXPECT_TRUE(coverage(K).uniform());
}

TEST(Constellation, TwoDimensionalPairsCoverUniformly) {
  Lattice lam = Lattice::scaled(2, Rational(1, 2)), gam = Lattice::integer(2);
  Lattice lam2 = Lattice::scaled(2, Rational(3, 2)), gam2 = Lattice::scaled(2, 3);
  auto K = build_constellation({{lam, gam}, {lam2, gam2}}, 0.05);
  EXPECT_EQ(K.size(), 16);
  Lattice lam3(RatMatrix{{Rational(1, 3), Rational(0)}, {Rational(0), Rational(1)}});
  EXPECT_THROW(build_constellation({{lam, gam}, {lam3, gam}}, 0.05), HypothesisUnverifiable);
  EXPECT_TRUE(coverage(K).uniform());
}

TEST(Constellation, RejectsNonNestedPairs) {
  EXPECT_THROW(build_constellation({{z1(2), z1(3)}}, 0.1), NotSublattice);
}

TEST(ExpSum, Examples) {
  std::vector<std::vector<double>> D{{0.0}, {0.5}};
  EXPECT_NEAR(std::abs(exp_sum_average(D, std::vector<double>{1.0})), 0.0, 1e-15);
  std::vector<std::vector<double>> Dp{{0.001}, {0.502}};
  EXPECT_LE(std::abs(exp_sum_average(Dp, std::vector<double>{1.0})),
            2 * std::numbers::pi * 0.002 + kFloatSlack);
}

TEST(ExpSum, FactorizedAverageEqualsDirectAverage) {
  auto K = perturbed(
      multiscale_constellation(scalar(Rational(3, 2)), z1(Rational(1, 5)), 1, 0.01), 7);
  auto pts = K.points();
  for (double m : {1.0, 2.5, -3.0, 7.25}) {
    auto a = exp_sum_average(K, std::vector<double>{m});
    auto b = exp_sum_average(pts, std::vector<double>{m});
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12);
  }
}

TEST(ExpSum, AverageApproximatesDualIndicator) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = fx::uniform(rng, 1, 2);
    Lattice gam = fx::random_lattice(rng, n, 3, 2);
    IntMatrix C = fx::random_nonsingular(rng, n, 3);
    Lattice lam(gam.basis() * inverse(to_rational(C)));
    double eps = 0.01 * (fx::uniform(rng, 1, 100) / 100.0);
    auto exact = build_constellation({{lam, gam}}, eps);
    auto approx = perturbed(exact, it);
    Lattice gd = dual(gam), ld = dual(lam);
    for (int p = 0; p < 20; ++p) {
      RatVec c(n);
      for (auto &ci : c) ci = Rational(fx::uniform(rng, -4, 4));
      RatVec m = gd.basis() * c;
      auto md = to_double(m);
      double target = ld.member(m) ? 1.0 : 0.0;
      ASSERT_NEAR(std::abs(exp_sum_average(exact, m) - target), 0.0, 1e-12);
      ASSERT_LE(std::abs(exp_sum_average(approx, md) - target),
                transversal_error_bound(md, eps) + kFloatSlack);
    }
  }
}
