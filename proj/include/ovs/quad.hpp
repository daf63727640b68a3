#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <string>

#include "ovs/rational.hpp"

namespace ovs {

/// Exact element a + b*sqrt(d) of Q(sqrt(d)) for a square-free d >= 2.
/// Values with b == 0 are rational and combine with any radicand.
class QuadScalar {
public:
  QuadScalar() = default;
  QuadScalar(int a) : a_(a) {}
  QuadScalar(const Rational &a) : a_(a) {}
  QuadScalar(const Rational &a, const Rational &b, long d = 2) : a_(a), b_(b), d_(d) {
    if (!square_free(d)) throw RadicandMismatch("radicand must be square-free and >= 2");
  }

  static bool square_free(long d) {
    if (d < 2) return false;
    for (long p = 2; p * p <= d; ++p)
      if (d % (p * p) == 0) return false;
    return true;
  }

  const Rational &a() const { return a_; }
  const Rational &b() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Exact sign of a + b*sqrt(d).
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  QuadScalar conj_sqrt() const { return make(a_, -b_, d_); }
  double to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
  }
  std::string str() const {
    if (b_.is_zero()) return a_.str();
    return a_.str() + (b_.sign() < 0 ? " - " : " + ") + b_.abs().str() + "*sqrt(" +
           std::to_string(d_) + ")";
  }

  QuadScalar operator-() const { return make(-a_, -b_, d_); }
  friend QuadScalar operator+(const QuadScalar &x, const QuadScalar &y) {
    return make(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
  }
  friend QuadScalar operator-(const QuadScalar &x, const QuadScalar &y) {
    return make(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
  }
  friend QuadScalar operator*(const QuadScalar &x, const QuadScalar &y) {
    long d = join(x, y);
    return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadScalar operator/(const QuadScalar &x, const QuadScalar &y) {
    long d = join(x, y);
    Rational n = y.a_ * y.a_ - y.b_ * y.b_ * Rational(d);
    if (n.is_zero()) throw std::domain_error("division by zero");
    QuadScalar num = x * y.conj_sqrt();
    return make(num.a_ / n, num.b_ / n, d);
  }
  QuadScalar &operator+=(const QuadScalar &o) { return *this = *this + o; }
  QuadScalar &operator-=(const QuadScalar &o) { return *this = *this - o; }
  QuadScalar &operator*=(const QuadScalar &o) { return *this = *this * o; }

  friend bool operator==(const QuadScalar &x, const QuadScalar &y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }
  friend bool operator<(const QuadScalar &x, const QuadScalar &y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadScalar &x, const QuadScalar &y) { return y < x; }

private:
  static QuadScalar make(Rational a, Rational b, long d) {
    QuadScalar q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    q.d_ = d;
    return q;
  }
  static long join(const QuadScalar &x, const QuadScalar &y) {
    if (x.b_.is_zero()) return y.d_;
    if (y.b_.is_zero()) return x.d_;
    if (x.d_ != y.d_)
      throw RadicandMismatch("mixed radicands " + std::to_string(x.d_) + " and " +
                             std::to_string(y.d_));
    return x.d_;
  }

  Rational a_, b_;
  long d_ = 2;
};

inline std::ostream &operator<<(std::ostream &os, const QuadScalar &x) { return os << x.str(); }

/// re + i*im with both parts in Q(sqrt(d)).
class ComplexQuad {
public:
  ComplexQuad() = default;
  ComplexQuad(int r) : re_(r) {}
  ComplexQuad(const Rational &r) : re_(r) {}
  ComplexQuad(const QuadScalar &r) : re_(r) {}
  ComplexQuad(const QuadScalar &r, const QuadScalar &i) : re_(r), im_(i) {}

  const QuadScalar &re() const { return re_; }
  const QuadScalar &im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  ComplexQuad conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  QuadScalar norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    return "(" + re_.str() + ") + i(" + im_.str() + ")";
  }

  ComplexQuad operator-() const { return {-re_, -im_}; }
  friend ComplexQuad operator+(const ComplexQuad &x, const ComplexQuad &y) {
    return {x.re_ + y.re_, x.im_ + y.im_};
  }
  friend ComplexQuad operator-(const ComplexQuad &x, const ComplexQuad &y) {
    return {x.re_ - y.re_, x.im_ - y.im_};
  }
  friend ComplexQuad operator*(const ComplexQuad &x, const ComplexQuad &y) {
    return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
  }
  ComplexQuad &operator+=(const ComplexQuad &o) { return *this = *this + o; }
  ComplexQuad &operator*=(const ComplexQuad &o) { return *this = *this * o; }
  friend bool operator==(const ComplexQuad &x, const ComplexQuad &y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

private:
  QuadScalar re_, im_;
};

inline std::ostream &operator<<(std::ostream &os, const ComplexQuad &z) { return os << z.str(); }

}  // namespace ovs
