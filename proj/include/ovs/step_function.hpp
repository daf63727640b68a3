#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ovs/quad.hpp"

namespace ovs {

/// Compactly supported step function on R with rational breakpoints and values in
/// Q(sqrt d) + i Q(sqrt d). Piece k is [b_k, b_{k+1}); functions are compared almost
/// everywhere, so endpoint conventions are not tracked through reflections.
class StepFunction {
public:
  StepFunction() = default;

  StepFunction(std::vector<Rational> breakpoints, std::vector<ComplexQuad> values)
      : b_(std::move(breakpoints)), v_(std::move(values)) {
    if (b_.empty() && v_.empty()) return;
    if (b_.size() != v_.size() + 1)
      throw SchemaError("step function needs one more breakpoint than values");
    for (std::size_t i = 0; i + 1 < b_.size(); ++i)
      if (!(b_[i] < b_[i + 1])) throw SchemaError("breakpoints must be strictly increasing");
    canonicalize();
  }

  static StepFunction indicator(const Rational &lo, const Rational &hi, const ComplexQuad &v = 1) {
    if (!(lo < hi)) return {};
    return StepFunction({lo, hi}, {v});
  }

  const std::vector<Rational> &breakpoints() const { return b_; }
  const std::vector<ComplexQuad> &values() const { return v_; }
  std::size_t pieces() const { return v_.size(); }
  bool is_zero() const { return v_.empty(); }

  ComplexQuad operator()(const Rational &x) const {
    if (v_.empty() || x < b_.front() || !(x < b_.back())) return {};
    auto it = std::upper_bound(b_.begin(), b_.end(), x);
    return v_[static_cast<std::size_t>(it - b_.begin()) - 1];
  }

  /// Closed hull [b_0, b_k] of the support.
  std::optional<std::pair<Rational, Rational>> hull() const {
    if (v_.empty()) return std::nullopt;
    return std::make_pair(b_.front(), b_.back());
  }

  /// min and max of |x| over the closure of the support, or nullopt when zero.
  std::optional<std::pair<Rational, Rational>> radial_extent() const {
    if (v_.empty()) return std::nullopt;
    std::optional<Rational> lo;
    Rational hi;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (v_[k].is_zero()) continue;
      const Rational &l = b_[k], &h = b_[k + 1];
      Rational near = (l.sign() <= 0 && h.sign() >= 0) ? Rational(0) : std::min(l.abs(), h.abs());
      Rational far = std::max(l.abs(), h.abs());
      if (!lo || near < *lo) lo = near;
      if (far > hi) hi = far;
    }
    return std::make_pair(*lo, hi);
  }

  bool vanishes_near_zero() const {
    auto e = radial_extent();
    return !e || e->first.sign() > 0;
  }

  StepFunction conj() const {
    StepFunction out = *this;
    for (auto &v : out.v_) v = v.conj();
    return out;
  }

  /// g(x) = f(r x), r != 0.
  StepFunction dilate(const Rational &r) const {
    if (r.is_zero()) throw std::invalid_argument("dilation by zero");
    if (v_.empty()) return {};
    std::vector<Rational> b;
    std::vector<ComplexQuad> v;
    if (r.sign() > 0) {
      for (const auto &x : b_) b.push_back(x / r);
      v = v_;
    } else {
      for (auto it = b_.rbegin(); it != b_.rend(); ++it) b.push_back(*it / r);
      v.assign(v_.rbegin(), v_.rend());
    }
    return StepFunction(std::move(b), std::move(v));
  }

  /// g(x) = f(x + t).
  StepFunction shift(const Rational &t) const {
    StepFunction out = *this;
    for (auto &x : out.b_) x -= t;
    return out;
  }

  /// f * indicator of [lo, hi).
  StepFunction restrict_to(const Rational &lo, const Rational &hi) const {
    return *this * indicator(lo, hi);
  }

  ComplexQuad integral() const {
    ComplexQuad s;
    for (std::size_t k = 0; k < v_.size(); ++k) s += v_[k] * ComplexQuad(b_[k + 1] - b_[k]);
    return s;
  }

  /// sup |f|^2, exact.
  QuadScalar sup_norm2() const {
    QuadScalar best(0);
    for (const auto &v : v_) {
      QuadScalar m = v.norm2();
      if (m > best) best = m;
    }
    return best;
  }

  /// Radicand of the irrational values, defaulting to 2.
  long radicand() const {
    for (const auto &v : v_) {
      if (!v.re().is_rational()) return v.re().radicand();
      if (!v.im().is_rational()) return v.im().radicand();
    }
    return 2;
  }

  friend StepFunction operator+(const StepFunction &f, const StepFunction &g) {
    return combine(f, g, [](const ComplexQuad &a, const ComplexQuad &b) { return a + b; });
  }
  friend StepFunction operator-(const StepFunction &f, const StepFunction &g) {
    return combine(f, g, [](const ComplexQuad &a, const ComplexQuad &b) { return a - b; });
  }
  friend StepFunction operator*(const StepFunction &f, const StepFunction &g) {
    if (f.is_zero() || g.is_zero()) return {};
    return combine(f, g, [](const ComplexQuad &a, const ComplexQuad &b) { return a * b; });
  }
  friend StepFunction operator*(const ComplexQuad &c, StepFunction f) {
    for (auto &v : f.v_) v = c * v;
    f.canonicalize();
    return f;
  }
  StepFunction &operator+=(const StepFunction &o) { return *this = *this + o; }

  friend bool operator==(const StepFunction &f, const StepFunction &g) {
    return f.b_ == g.b_ && f.v_ == g.v_;
  }

  std::string str() const {
    if (v_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < v_.size(); ++k)
      s += (k ? " " : "") + std::string("[") + b_[k].str() + "," + b_[k + 1].str() + "):" + v_[k].str();
    return s;
  }
  friend std::ostream &operator<<(std::ostream &os, const StepFunction &f) { return os << f.str(); }

private:
  template <class Op>
  static StepFunction combine(const StepFunction &f, const StepFunction &g, Op op) {
    std::vector<Rational> b;
    b.reserve(f.b_.size() + g.b_.size());
    std::merge(f.b_.begin(), f.b_.end(), g.b_.begin(), g.b_.end(), std::back_inserter(b));
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (b.size() < 2) return {};
    std::vector<ComplexQuad> v;
    v.reserve(b.size() - 1);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) v.push_back(op(f(b[k]), g(b[k])));
    StepFunction out;
    out.b_ = std::move(b);
    out.v_ = std::move(v);
    out.canonicalize();
    return out;
  }

  void canonicalize() {
    std::vector<Rational> b;
    std::vector<ComplexQuad> v;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (!v.empty() && v.back() == v_[k]) {
        b.back() = b_[k + 1];
        continue;
      }
      if (v.empty()) b.push_back(b_[k]);
      v.push_back(v_[k]);
      b.push_back(b_[k + 1]);
    }
    std::size_t lo = 0, hi = v.size();
    while (lo < hi && v[lo].is_zero()) ++lo;
    while (hi > lo && v[hi - 1].is_zero()) --hi;
    b_.assign(b.begin() + static_cast<long>(lo), b.begin() + static_cast<long>(hi) + (hi > lo ? 1 : 0));
    v_.assign(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi));
    if (v_.empty()) b_.clear();
  }

  std::vector<Rational> b_;
  std::vector<ComplexQuad> v_;
};

}  // namespace ovs
