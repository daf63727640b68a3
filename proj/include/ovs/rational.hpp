#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ovs/errors.hpp"

namespace ovs {

using BigInt = mpz_class;

inline BigInt gcd(const BigInt &a, const BigInt &b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt &a, const BigInt &b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline BigInt xgcd(const BigInt &a, const BigInt &b, BigInt &s, BigInt &t) {
  BigInt g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

inline BigInt floor_div(const BigInt &a, const BigInt &b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt trunc_div(const BigInt &a, const BigInt &b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const BigInt &d, const BigInt &n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(const BigInt &n) : v_(n) {}
  Rational(const BigInt &n, const BigInt &d) {
    if (d == 0) throw std::domain_error("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  Rational(long n, long d) : Rational(BigInt(n), BigInt(d)) {}
  explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }
  template <class T, class U> Rational(const __gmp_expr<T, U> &e) : v_(e) { v_.canonicalize(); }

  /// Parses "p/q" or "p" (optional sign, decimal digits).
  static Rational parse(std::string_view s) {
    auto valid_int = [](std::string_view t, bool allow_sign) {
      if (t.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    auto slash = s.find('/');
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(ns, true) || !valid_int(ds, false))
      throw SchemaError("invalid rational '" + std::string(s) + "'");
    std::string n(ns), d(ds);
    if (n[0] == '+') n.erase(0, 1);
    BigInt den(d);
    if (den == 0) throw SchemaError("zero denominator in '" + std::string(s) + "'");
    return Rational(BigInt(n), den);
  }

  const mpq_class &raw() const { return v_; }
  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  BigInt floor() const { return floor_div(v_.get_num(), v_.get_den()); }
  BigInt ceil() const { return -floor_div(-v_.get_num(), v_.get_den()); }
  /// Nearest integer, halves rounded up.
  BigInt round() const { return (*this + Rational(1, 2)).floor(); }
  Rational abs() const { return Rational(::abs(v_)); }
  Rational frac() const { return *this - Rational(floor()); }
  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
  Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
  Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
  Rational &operator/=(const Rational &o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.str();
  }

private:
  mpq_class v_;
};

using RatVec = std::vector<Rational>;
using IntVec = std::vector<BigInt>;

inline Rational pow(const Rational &r, long e) {
  Rational base = e < 0 ? Rational(1) / r : r;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational out(1);
  while (k) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1u;
  }
  return out;
}

inline Rational dot(const RatVec &x, const RatVec &y) {
  if (x.size() != y.size()) throw DimError("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Rational norm2(const RatVec &x) { return dot(x, x); }

inline std::vector<double> to_double(const RatVec &x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto &v : x) out.push_back(v.to_double());
  return out;
}

inline std::string to_string(const RatVec &x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].str();
  return s + ")";
}

}  // namespace ovs
