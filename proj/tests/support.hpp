#pragma once

#include <algorithm>
#include <random>

#include "ovs/lattice.hpp"
#include "ovs/step_function.hpp"

namespace ovs::fixtures {

inline long uniform(std::mt19937_64 &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational random_rational(std::mt19937_64 &rng, long num_bound, long den_bound) {
  return Rational(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
}

inline IntMatrix random_int_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

inline IntMatrix random_nonsingular(std::mt19937_64 &rng, std::size_t n, long bound) {
  for (;;) {
    IntMatrix m = random_int_matrix(rng, n, n, bound);
    if (det(m) != 0) return m;
  }
}

inline IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n, int steps = 6) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 1) {
    if (uniform(rng, 0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int s = 0; s < steps; ++s) {
    std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    u.add_col(i, j, BigInt(uniform(rng, -2, 2)));
  }
  if (uniform(rng, 0, 1)) u.negate_col(0);
  return u;
}

/// Random full-rank lattice with entries of denominator <= den_bound.
inline Lattice random_lattice(std::mt19937_64 &rng, std::size_t n, long num_bound = 4,
                              long den_bound = 6) {
  for (;;) {
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = random_rational(rng, num_bound, den_bound);
    if (!det(b).is_zero()) return Lattice(b);
  }
}

/// Random lattice with Z^n inside it and inside (1/den) Z^n.
inline Lattice random_superlattice_of_integers(std::mt19937_64 &rng, std::size_t n, long den) {
  RatMatrix g = RatMatrix::identity(n);
  int extra = static_cast<int>(uniform(rng, 0, 2));
  for (int e = 0; e < extra; ++e) {
    RatMatrix c(n, 1);
    for (std::size_t i = 0; i < n; ++i) c(i, 0) = Rational(uniform(rng, 0, den - 1), den);
    g = g.hconcat(c);
  }
  return Lattice(g);
}

/// Random step function supported in [-hi,-lo) u [lo,hi) with values in Q(sqrt 2) + i Q(sqrt 2).
inline StepFunction random_step(std::mt19937_64 &rng, const Rational &lo, const Rational &hi, int pieces,
                                bool complex_values = true, bool radicals = true) {
  StepFunction out;
  for (int side : {-1, 1}) {
    std::vector<Rational> cuts;
    for (int k = 0; k < pieces - 1; ++k)
      cuts.push_back(lo + (hi - lo) * Rational(uniform(rng, 1, 23), 24));
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      auto q = [&] {
        return QuadScalar(random_rational(rng, 3, 4), radicals ? random_rational(rng, 2, 3) : Rational(0));
      };
      ComplexQuad v(q(), complex_values ? q() : QuadScalar(0));
      Rational a = cuts[k], b = cuts[k + 1];
      out += side > 0 ? StepFunction::indicator(a, b, v) : StepFunction::indicator(-b, -a, v);
    }
  }
  return out;
}

}  // namespace ovs::fixtures
