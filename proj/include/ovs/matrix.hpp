#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ovs/rational.hpp"

namespace ovs {

/// Dense row-major matrix.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimError("matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto &r : rows) {
      if (r.size() != cols_) throw DimError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T> &d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<T>> &cols) {
    if (cols.empty()) return {};
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw DimError("column length mismatch");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  /// Columns of *this followed by columns of o.
  Matrix hconcat(const Matrix &o) const {
    if (rows_ != o.rows_) throw DimError("hconcat row mismatch");
    Matrix m(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
    }
    return m;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const T &f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const T &f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend Matrix operator*(const Matrix &x, const Matrix &y) {
    if (x.cols_ != y.rows_) throw DimError("matrix product shape mismatch");
    Matrix m(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T &a = x(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) m(i, j) += a * y(k, j);
      }
    return m;
  }
  friend std::vector<T> operator*(const Matrix &x, const std::vector<T> &v) {
    if (x.cols_ != v.size()) throw DimError("matrix-vector shape mismatch");
    std::vector<T> out(x.rows_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) out[i] += x(i, k) * v[k];
    return out;
  }
  friend Matrix operator*(const T &s, Matrix m) {
    for (auto &e : m.data_) e = s * e;
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T> &data() const { return data_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix &m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline bool is_integral(const RatMatrix &m) {
  for (const auto &e : m.data())
    if (!e.is_integer()) return false;
  return true;
}

inline IntMatrix to_integer(const RatMatrix &m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) throw DimError("matrix entry is not an integer");
      r(i, j) = m(i, j).num();
    }
  return r;
}

/// Least positive L with L*m integral.
inline BigInt common_denominator(const RatMatrix &m) {
  BigInt l = 1;
  for (const auto &e : m.data()) l = lcm(l, e.den());
  return l;
}

inline BigInt common_denominator(const RatVec &v) {
  BigInt l = 1;
  for (const auto &e : v) l = lcm(l, e.den());
  return l;
}

inline Rational det(const RatMatrix &m) {
  if (!m.square()) throw DimError("determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      a.swap_rows(p, c);
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      a.add_row(r, c, -(a(r, c) / a(c, c)));
    }
  }
  return d;
}

inline BigInt det(const IntMatrix &m) { return det(to_rational(m)).num(); }

inline std::size_t rank(const RatMatrix &m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i)
      if (!a(i, c).is_zero()) a.add_row(i, r, -(a(i, c) / a(r, c)));
    ++r;
  }
  return r;
}

inline RatMatrix inverse(const RatMatrix &m) {
  if (!m.square()) throw DimError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw RankError("matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      Rational f = -a(r, c);
      a.add_row(r, c, f);
      inv.add_row(r, c, f);
    }
  }
  return inv;
}

inline RatMatrix power(const RatMatrix &m, long e) {
  if (!m.square()) throw DimError("power of non-square matrix");
  RatMatrix base = e < 0 ? inverse(m) : m;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  RatMatrix out = RatMatrix::identity(m.rows());
  while (k) {
    if (k & 1u) out = out * base;
    base = base * base;
    k >>= 1u;
  }
  return out;
}

template <class T> std::string to_string(const Matrix<T> &m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, BigInt>)
        s += (j ? " " : "") + m(i, j).get_str();
      else
        s += (j ? " " : "") + m(i, j).str();
    }
  }
  return s + "]";
}

}  // namespace ovs
