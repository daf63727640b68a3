#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ovs/lattice.hpp"

namespace ovs {

/// Absolute slack added to every floating-point tolerance comparison.
inline constexpr double kFloatSlack = 1e-12;

namespace detail {

inline bool near_integer(const Rational &t, const Rational &eps) {
  return (t - Rational(t.round())).abs() <= eps;
}
inline bool near_integer(double t, double eps) {
  return std::abs(t - std::round(t)) <= eps + kFloatSlack;
}

template <class S> S inner(const std::vector<S> &a, const std::vector<S> &b) {
  if (a.size() != b.size()) throw DimError("inner product: length mismatch");
  S s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class S> S from_long(long v) {
  if constexpr (std::is_same_v<S, double>)
    return static_cast<double>(v);
  else
    return S(v);
}

}  // namespace detail

/// Membership of x in the set of points whose pairing with every g in F is within eps of Z.
/// Rational data is compared exactly; double data carries kFloatSlack.
template <class S>
bool approx_dual_member(const std::vector<std::vector<S>> &F, const S &eps, const std::vector<S> &x) {
  for (const auto &g : F)
    if (!detail::near_integer(detail::inner(x, g), eps)) return false;
  return true;
}

/// Integer z with |z|_inf <= R and x - z in the approximate dual of F.
/// Among valid z the smallest sup-norm wins, then Euclidean norm, then lexicographic order.
template <class S>
std::optional<std::vector<long>> approx_dual_decompose(const std::vector<std::vector<S>> &F,
                                                       const S &eps, const std::vector<S> &x,
                                                       long R) {
  const std::size_t n = x.size();
  if (R < 0) throw std::invalid_argument("negative search radius");
  std::vector<long> z(n, -R);
  std::optional<std::vector<long>> best;
  auto key = [](const std::vector<long> &v) {
    long sup = 0, e2 = 0;
    for (long c : v) {
      sup = std::max(sup, std::labs(c));
      e2 += c * c;
    }
    return std::make_pair(sup, e2);
  };
  for (;;) {
    std::vector<S> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - detail::from_long<S>(z[i]);
    if (approx_dual_member(F, eps, y)) {
      if (!best || key(z) < key(*best) || (key(z) == key(*best) && z < *best)) best = z;
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++z[i] <= R) break;
      z[i] = -R;
    }
    if (i == n) break;
  }
  return best;
}

/// A point with floating coordinates and, when known, exact rational coordinates.
struct Point {
  std::vector<double> x;
  std::optional<RatVec> exact;

  static Point from_exact(const RatVec &r) { return {to_double(r), r}; }
};

/// Multiset K = D^1 + ... + D^J kept in factorized form.
struct Constellation {
  std::size_t dim = 0;
  double epsilon = 0;
  std::vector<std::pair<Lattice, Lattice>> pairs;  // (Lambda_i, Gamma_i)
  std::vector<std::vector<Point>> factors;         // D^i, one point per coset of Lambda_i/Gamma_i

  BigInt size() const {
    BigInt s = 1;
    for (const auto &f : factors) s *= static_cast<unsigned long>(f.size());
    return s;
  }

  /// All sums d_1 + ... + d_J, the first factor varying fastest.
  std::vector<Point> points(std::size_t limit = 2'000'000) const {
    if (size() > limit) throw Unsupported("constellation too large to materialize");
    std::vector<Point> out;
    std::vector<std::size_t> idx(factors.size(), 0);
    for (;;) {
      Point p{std::vector<double>(dim, 0.0), RatVec(dim, Rational(0))};
      for (std::size_t f = 0; f < factors.size(); ++f) {
        const Point &q = factors[f][idx[f]];
        for (std::size_t k = 0; k < dim; ++k) p.x[k] += q.x[k];
        if (p.exact && q.exact)
          for (std::size_t k = 0; k < dim; ++k) (*p.exact)[k] += (*q.exact)[k];
        else
          p.exact.reset();
      }
      out.push_back(std::move(p));
      std::size_t f = 0;
      for (; f < factors.size(); ++f) {
        if (++idx[f] < factors[f].size()) break;
        idx[f] = 0;
      }
      if (f == factors.size()) break;
    }
    return out;
  }
};

struct ConstellationOptions {
  /// Candidate base points are drawn from this lattice; defaults to the intersection of all Lambda_i.
  std::optional<Lattice> search_lattice;
  /// Upper bound on the number of candidates examined in the final search round.
  std::size_t max_candidates = 200'000;
};

namespace detail {

/// Lattice point obtained by rounding the basis coordinates of y.
inline RatVec round_to_lattice(const Lattice &l, const RatVec &y) {
  RatVec c = l.coordinates(y);
  for (auto &ci : c) ci = Rational(ci.round());
  return l.basis() * c;
}

inline double distance(const RatVec &a, const RatVec &b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s.to_double());
}

inline std::vector<RatVec> lattice_box(const Lattice &g, long R) {
  const std::size_t n = g.dim();
  std::vector<RatVec> pts;
  RatVec c(n, Rational(-R));
  for (;;) {
    pts.push_back(g.basis() * c);
    std::size_t i = 0;
    for (; i < n; ++i) {
      c[i] += Rational(1);
      if (c[i] <= Rational(R)) break;
      c[i] = Rational(-R);
    }
    if (i == n) break;
  }
  std::vector<std::pair<Rational, RatVec>> keyed;
  keyed.reserve(pts.size());
  for (auto &p : pts) keyed.emplace_back(norm2(p), std::move(p));
  std::sort(keyed.begin(), keyed.end());
  pts.clear();
  for (auto &kp : keyed) pts.push_back(std::move(kp.second));
  return pts;
}

}  // namespace detail

/// Builds an eps-approximate transversal constellation for the pairs Gamma_i < Lambda_i.
/// Each coset of Lambda_i/Gamma_i receives the smallest-norm candidate that lies within
/// delta = eps/J of every Lambda_k and within delta of that coset.
inline Constellation build_constellation(const std::vector<std::pair<Lattice, Lattice>> &pairs,
                                         double eps, const ConstellationOptions &opts = {}) {
  if (pairs.empty()) throw DimError("no lattice pairs");
  if (eps < 0) throw std::invalid_argument("negative epsilon");
  const std::size_t n = pairs[0].first.dim(), J = pairs.size();
  std::vector<Lattice> lambdas;
  for (const auto &[lam, gam] : pairs) {
    require_same_dim(lam, pairs[0].first);
    require_same_dim(gam, lam);
    if (!is_sublattice(gam, lam)) throw NotSublattice("Gamma_i is not contained in Lambda_i");
    lambdas.push_back(lam);
  }
  const double delta = eps / static_cast<double>(J);
  const bool default_search = !opts.search_lattice.has_value();
  Lattice G = default_search ? intersect(lambdas) : *opts.search_lattice;
  require_same_dim(G, lambdas[0]);

  if (default_search) {
    for (std::size_t i = 0; i < J; ++i)
      if (!is_sublattice(pairs[i].first, sum(G, pairs[i].second)))
        throw HypothesisUnverifiable("Lambda_" + std::to_string(i) +
                                     " is not covered by the common intersection plus Gamma_" +
                                     std::to_string(i));
  }

  std::vector<std::map<RatVec, std::size_t>> coset_index(J);
  std::vector<std::size_t> order(J);
  for (std::size_t i = 0; i < J; ++i) {
    auto reps = exact_transversal(pairs[i].first, pairs[i].second);
    for (std::size_t k = 0; k < reps.size(); ++k) coset_index[i][reps[k]] = k;
    order[i] = reps.size();
  }

  std::vector<std::vector<std::optional<RatVec>>> slots;
  for (long R = 1;; R *= 2) {
    double count = std::pow(2.0 * R + 1.0, static_cast<double>(n));
    slots.assign(J, {});
    for (std::size_t i = 0; i < J; ++i) slots[i].assign(order[i], std::nullopt);
    std::size_t open = 0;
    for (auto o : order) open += o;
    for (const RatVec &y : detail::lattice_box(G, R)) {
      std::vector<RatVec> nearest(J);
      bool inside = true;
      for (std::size_t k = 0; k < J && inside; ++k) {
        nearest[k] = detail::round_to_lattice(lambdas[k], y);
        inside = detail::distance(y, nearest[k]) <= delta + kFloatSlack;
      }
      if (!inside) continue;
      for (std::size_t i = 0; i < J; ++i) {
        auto it = coset_index[i].find(reduce_mod(pairs[i].second, nearest[i]));
        if (it == coset_index[i].end()) continue;
        auto &slot = slots[i][it->second];
        if (!slot) {
          slot = y;
          --open;
        }
      }
      if (open == 0) break;
    }
    if (open == 0) break;
    if (count >= static_cast<double>(opts.max_candidates))
      throw HypothesisUnverifiable("no delta-close candidate found for some coset within the search budget");
  }

  Constellation K;
  K.dim = n;
  K.epsilon = eps;
  K.pairs = pairs;
  for (std::size_t i = 0; i < J; ++i) {
    std::vector<Point> f;
    for (const auto &s : slots[i]) f.push_back(Point::from_exact(*s));
    K.factors.push_back(std::move(f));
  }
  return K;
}

/// Pairs (A^j Lambda, A^j Z^n) for |j| <= J.
inline std::vector<std::pair<Lattice, Lattice>> multiscale_pairs(const RatMatrix &A,
                                                                const Lattice &lambda, long J) {
  const std::size_t n = lambda.dim();
  if (!A.square() || A.rows() != n) throw DimError("dilation shape mismatch");
  if (!is_sublattice(Lattice::integer(n), lambda)) throw NotSublattice("Z^n is not inside Lambda");
  std::vector<std::pair<Lattice, Lattice>> pairs;
  for (long j = -J; j <= J; ++j) {
    RatMatrix Aj = power(A, j);
    pairs.emplace_back(lambda.image(Aj), Lattice(Aj));
  }
  return pairs;
}

inline Constellation multiscale_constellation(const RatMatrix &A, const Lattice &lambda, long J,
                                              double eps, const ConstellationOptions &opts = {}) {
  return build_constellation(multiscale_pairs(A, lambda, J), eps, opts);
}

/// Moves each factor point by a random vector of length at most eps/J; the result is
/// again an eps-approximate transversal constellation.
inline Constellation perturbed(const Constellation &K, std::uint64_t seed) {
  Constellation out = K;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double delta = K.epsilon / static_cast<double>(K.factors.size());
  for (auto &f : out.factors)
    for (auto &p : f) {
      std::vector<double> dir(K.dim);
      double len = 0;
      for (auto &d : dir) {
        d = gauss(rng);
        len += d * d;
      }
      len = std::sqrt(len);
      double r = delta * unit(rng);
      for (std::size_t k = 0; k < K.dim; ++k) p.x[k] += len > 0 ? r * dir[k] / len : 0.0;
      p.exact.reset();
    }
  return out;
}

namespace detail {

inline std::complex<double> unit_phase(double t) {
  double f = t - std::floor(t);
  double a = 2.0 * std::numbers::pi * f;
  return {std::cos(a), std::sin(a)};
}

inline std::complex<double> phase(const Point &d, const RatVec &m) {
  if (d.exact) return unit_phase(dot(m, *d.exact).frac().to_double());
  double t = 0;
  for (std::size_t k = 0; k < m.size(); ++k) t += m[k].to_double() * d.x[k];
  return unit_phase(t);
}

inline std::complex<double> phase(const Point &d, const std::vector<double> &m) {
  double t = 0;
  for (std::size_t k = 0; k < m.size(); ++k) t += m[k] * d.x[k];
  return unit_phase(t);
}

}  // namespace detail

/// (1/|D|) sum_{d in D} exp(2 pi i <m, d>).
template <class M> std::complex<double> exp_sum_average(const std::vector<Point> &D, const M &m) {
  if (D.empty()) throw DimError("empty point set");
  std::complex<double> s = 0;
  for (const auto &d : D) {
    if (d.x.size() != m.size()) throw DimError("frequency dimension mismatch");
    s += detail::phase(d, m);
  }
  return s / static_cast<double>(D.size());
}

inline std::complex<double> exp_sum_average(const std::vector<std::vector<double>> &D,
                                            const std::vector<double> &m) {
  std::vector<Point> pts;
  for (const auto &d : D) pts.push_back({d, std::nullopt});
  return exp_sum_average(pts, m);
}

/// Average over the algebraic sum K; factorizes over the summands.
template <class M> std::complex<double> exp_sum_average(const Constellation &K, const M &m) {
  std::complex<double> p = 1;
  for (const auto &f : K.factors) p *= exp_sum_average(f, m);
  return p;
}

/// Upper bound 2 pi |m| eps on |average - indicator(m in Lambda*)| for m in Gamma*.
inline double transversal_error_bound(const std::vector<double> &m, double eps) {
  double n2 = 0;
  for (double c : m) n2 += c * c;
  return 2.0 * std::numbers::pi * std::sqrt(n2) * eps;
}

struct CoverageReport {
  std::vector<std::vector<std::size_t>> counts;  // counts[i][coset]
  std::size_t unassigned = 0;                     // points farther than eps from Lambda_i

  bool uniform() const {
    if (unassigned) return false;
    for (const auto &c : counts)
      if (std::adjacent_find(c.begin(), c.end(), std::not_equal_to<>()) != c.end()) return false;
    return true;
  }
};

/// Direct count of how the materialized K falls into the eps-neighbourhoods of each coset.
inline CoverageReport coverage(const Constellation &K, std::size_t max_points = 2'000'000) {
  CoverageReport rep;
  auto pts = K.points(max_points);
  for (const auto &[lam, gam] : K.pairs) {
    auto reps = exact_transversal(lam, gam);
    std::map<RatVec, std::size_t> idx;
    for (std::size_t k = 0; k < reps.size(); ++k) idx[reps[k]] = k;
    std::vector<std::size_t> counts(reps.size(), 0);
    RatMatrix inv = inverse(lam.basis());
    for (const auto &p : pts) {
      RatVec c(K.dim);
      for (std::size_t r = 0; r < K.dim; ++r) {
        double s = 0;
        for (std::size_t k = 0; k < K.dim; ++k) s += inv(r, k).to_double() * p.x[k];
        c[r] = Rational(std::lround(s));
      }
      RatVec near = lam.basis() * c;
      double d2 = 0;
      for (std::size_t k = 0; k < K.dim; ++k) d2 += std::pow(p.x[k] - near[k].to_double(), 2);
      if (std::sqrt(d2) > K.epsilon + kFloatSlack) {
        ++rep.unassigned;
        continue;
      }
      ++counts[idx.at(reduce_mod(gam, near))];
    }
    rep.counts.push_back(counts);
  }
  return rep;
}

}  // namespace ovs
