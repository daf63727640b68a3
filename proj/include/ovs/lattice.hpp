#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ovs/normal_form.hpp"

namespace ovs {

/// Full-rank lattice B*Z^n in Q^n, stored by its canonical lower-triangular HNF basis.
class Lattice {
public:
  Lattice() = default;

  /// Lattice generated by the columns of an n x k rational matrix of rank n.
  explicit Lattice(const RatMatrix &generators) {
    if (generators.rows() == 0) throw DimError("lattice of dimension 0");
    if (generators.cols() < generators.rows() || rank(generators) < generators.rows())
      throw RankError("generators do not span Q^" + std::to_string(generators.rows()));
    basis_ = hnf(generators).H;
  }

  static Lattice integer(std::size_t n) { return Lattice(RatMatrix::identity(n)); }
  static Lattice scaled(std::size_t n, const Rational &r) {
    return Lattice(r * RatMatrix::identity(n));
  }
  static Lattice diagonal(const RatVec &d) { return Lattice(RatMatrix::diagonal(d)); }

  std::size_t dim() const { return basis_.rows(); }
  const RatMatrix &basis() const { return basis_; }
  /// Covolume |det B|.
  Rational covolume() const { return det(basis_).abs(); }

  /// Coordinates of x in the canonical basis.
  RatVec coordinates(const RatVec &x) const {
    if (x.size() != dim()) throw DimError("point dimension mismatch");
    return solve_lower(x);
  }

  bool member(const RatVec &x) const {
    for (const auto &c : coordinates(x))
      if (!c.is_integer()) return false;
    return true;
  }

  /// Image M*Lambda for an invertible rational matrix M.
  Lattice image(const RatMatrix &M) const {
    if (!M.square() || M.rows() != dim()) throw DimError("image: shape mismatch");
    return Lattice(M * basis_);
  }
  Lattice scale(const Rational &r) const { return Lattice(r * basis_); }

  Lattice dual() const { return Lattice(inverse(basis_.transpose())); }

  friend bool operator==(const Lattice &a, const Lattice &b) { return a.basis_ == b.basis_; }

private:
  RatVec solve_lower(const RatVec &x) const {
    const std::size_t n = dim();
    RatVec c(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= basis_(i, j) * c[j];
      c[i] = s / basis_(i, i);
    }
    return c;
  }

  RatMatrix basis_;
};

inline void require_same_dim(const Lattice &a, const Lattice &b) {
  if (a.dim() != b.dim()) throw DimError("lattice dimensions differ");
}

inline Lattice dual(const Lattice &l) { return l.dual(); }

inline Lattice sum(const std::vector<Lattice> &ls) {
  if (ls.empty()) throw DimError("sum of no lattices");
  RatMatrix g = ls[0].basis();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    require_same_dim(ls[0], ls[i]);
    g = g.hconcat(ls[i].basis());
  }
  return Lattice(g);
}

inline Lattice sum(const Lattice &a, const Lattice &b) { return sum(std::vector<Lattice>{a, b}); }

/// Intersection from the integer kernel of [B1 | -B2].
inline Lattice intersect(const Lattice &a, const Lattice &b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  RatMatrix stacked = a.basis().hconcat(Rational(-1) * b.basis());
  BigInt L = common_denominator(stacked);
  IntMatrix Mi(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) Mi(i, j) = (stacked(i, j) * Rational(L)).num();
  HnfResult h = hnf(Mi);
  RatMatrix kernel_top = to_rational(h.U.block(0, n, n, n));
  return Lattice(a.basis() * kernel_top);
}

inline Lattice intersect(const std::vector<Lattice> &ls) {
  if (ls.empty()) throw DimError("intersection of no lattices");
  Lattice out = ls[0];
  for (std::size_t i = 1; i < ls.size(); ++i) out = intersect(out, ls[i]);
  return out;
}

inline bool member(const Lattice &l, const RatVec &x) { return l.member(x); }

/// True when gamma is contained in lambda.
inline bool is_sublattice(const Lattice &gamma, const Lattice &lambda) {
  require_same_dim(gamma, lambda);
  for (const auto &c : gamma.basis().columns())
    if (!lambda.member(c)) return false;
  return true;
}

/// |Lambda / Gamma| = d(Gamma) / d(Lambda).
inline BigInt quotient_order(const Lattice &lambda, const Lattice &gamma) {
  if (!is_sublattice(gamma, lambda)) throw NotSublattice("quotient_order: Gamma is not inside Lambda");
  Rational q = gamma.covolume() / lambda.covolume();
  return q.num();
}

/// Integer matrix C with Gamma basis = Lambda basis * C.
inline IntMatrix relative_basis(const Lattice &lambda, const Lattice &gamma) {
  if (!is_sublattice(gamma, lambda)) throw NotSublattice("Gamma is not a sublattice of Lambda");
  return to_integer(inverse(lambda.basis()) * gamma.basis());
}

/// Reduces x into the half-open fundamental parallelepiped of gamma's canonical basis.
inline RatVec reduce_mod(const Lattice &gamma, const RatVec &x) {
  RatVec c = gamma.coordinates(x);
  for (auto &ci : c) ci = Rational(ci.floor());
  RatVec shift = gamma.basis() * c;
  RatVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - shift[i];
  return out;
}

/// One representative of each coset of Lambda/Gamma, each inside the
/// fundamental parallelepiped of Gamma. The first coordinate varies fastest.
inline std::vector<RatVec> exact_transversal(const Lattice &lambda, const Lattice &gamma) {
  IntMatrix C = relative_basis(lambda, gamma);
  IntMatrix H = hnf(C).H;
  const std::size_t n = lambda.dim();
  std::vector<BigInt> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = H(i, i);
  std::vector<RatVec> reps;
  RatVec x(n, Rational(0));
  for (;;) {
    reps.push_back(reduce_mod(gamma, lambda.basis() * x));
    std::size_t i = 0;
    for (; i < n; ++i) {
      x[i] += Rational(1);
      if (x[i] < Rational(radix[i])) break;
      x[i] = Rational(0);
    }
    if (i == n) break;
  }
  return reps;
}

struct SmithBasis {
  std::vector<RatVec> v;         // basis of Lambda
  std::vector<BigInt> alpha;     // Gamma = span{alpha_i v_i}, alpha_i | alpha_{i+1}
  std::vector<RatVec> modified;  // w_i = v_i + v_n (i < n), w_n = v_n
};

inline SmithBasis smith_basis(const Lattice &lambda, const Lattice &gamma) {
  IntMatrix C = relative_basis(lambda, gamma);
  SnfResult s = snf(C);
  RatMatrix V = lambda.basis() * inverse(to_rational(s.U));
  SmithBasis out;
  const std::size_t n = lambda.dim();
  out.v = V.columns();
  for (std::size_t i = 0; i < n; ++i) out.alpha.push_back(s.D(i, i));
  for (std::size_t i = 0; i < n; ++i) {
    RatVec w = out.v[i];
    if (i + 1 < n)
      for (std::size_t k = 0; k < n; ++k) w[k] += out.v[n - 1][k];
    out.modified.push_back(w);
  }
  return out;
}

/// Lattice (1/lambda) Z^n.
inline Lattice inverse_scaled(std::size_t n, long lambda) {
  return Lattice::scaled(n, Rational(1, lambda));
}

}  // namespace ovs
