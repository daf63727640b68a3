#pragma once

#include "ovs/matrix.hpp"

namespace ovs {

struct HnfResult {
  IntMatrix H;  // n x n, lower triangular
  IntMatrix U;  // k x k unimodular, M * U = [H | 0]
};

/// Column-style Hermite normal form of an n x k integer matrix of rank n.
/// H is lower triangular with H(i,i) > 0 and 0 <= H(i,j) < H(i,i) for j < i.
inline HnfResult hnf(const IntMatrix &M) {
  const std::size_t n = M.rows(), k = M.cols();
  if (k < n) throw RankError("hnf: fewer columns than rows");
  IntMatrix A = M, U = IntMatrix::identity(k);
  BigInt s, t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (A(i, j) == 0) continue;
      BigInt a = A(i, i), b = A(i, j);
      BigInt g = xgcd(a, b, s, t);
      BigInt ag = a / g, bg = b / g;
      for (IntMatrix *X : {&A, &U}) {
        for (std::size_t r = 0; r < X->rows(); ++r) {
          BigInt ci = (*X)(r, i), cj = (*X)(r, j);
          (*X)(r, i) = s * ci + t * cj;
          (*X)(r, j) = ag * cj - bg * ci;
        }
      }
    }
    if (A(i, i) == 0) throw RankError("hnf: matrix does not have full row rank");
    if (A(i, i) < 0) {
      A.negate_col(i);
      U.negate_col(i);
    }
    for (std::size_t j = 0; j < i; ++j) {
      BigInt q = floor_div(A(i, j), A(i, i));
      if (q == 0) continue;
      A.add_col(j, i, BigInt(-q));
      U.add_col(j, i, BigInt(-q));
    }
  }
  return {A.block(0, 0, n, n), U};
}

struct SnfResult {
  IntMatrix D;  // diagonal, D(i,i) | D(i+1,i+1), all positive
  IntMatrix U;  // unimodular row transform
  IntMatrix V;  // unimodular column transform, D = U * M * V
};

/// Smith normal form of a nonsingular square integer matrix.
inline SnfResult snf(const IntMatrix &M) {
  if (!M.square()) throw DimError("snf: matrix must be square");
  const std::size_t n = M.rows();
  IntMatrix A = M, U = IntMatrix::identity(n), V = IntMatrix::identity(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (pi == n || abs(A(i, j)) < abs(A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == n) throw RankError("snf: matrix is singular");
      if (pi != t) {
        A.swap_rows(pi, t);
        U.swap_rows(pi, t);
      }
      if (pj != t) {
        A.swap_cols(pj, t);
        V.swap_cols(pj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (A(i, t) == 0) continue;
        BigInt q = trunc_div(A(i, t), A(t, t));
        A.add_row(i, t, BigInt(-q));
        U.add_row(i, t, BigInt(-q));
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        BigInt q = trunc_div(A(t, j), A(t, t));
        A.add_col(j, t, BigInt(-q));
        V.add_col(j, t, BigInt(-q));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(A(t, t), A(i, j))) {
            bad = i;
            break;
          }
      if (bad == n) break;
      A.add_row(t, bad, BigInt(1));
      U.add_row(t, bad, BigInt(1));
    }
    if (A(t, t) < 0) {
      A.negate_row(t);
      U.negate_row(t);
    }
  }
  return {A, U, V};
}

struct RationalHnf {
  RatMatrix H;     // lower triangular rational basis of the same lattice
  BigInt denominator;
};

/// HNF of a rational generator matrix: clear a common denominator L, reduce, divide by L.
/// The result does not depend on the choice of L.
inline RationalHnf hnf(const RatMatrix &M) {
  BigInt L = common_denominator(M);
  IntMatrix Mi(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) Mi(i, j) = (M(i, j) * Rational(L)).num();
  HnfResult h = hnf(Mi);
  RatMatrix H(h.H.rows(), h.H.cols());
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) H(i, j) = Rational(h.H(i, j), L);
  return {H, L};
}

}  // namespace ovs
