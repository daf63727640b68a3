#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ovs/conditions.hpp"
#include "ovs/frames.hpp"
#include "ovs/lattice.hpp"
#include "ovs/verdict.hpp"

namespace ovs {

/// Half-open box [lo_1,hi_1) x ... x [lo_n,hi_n).
struct Box {
  RatVec lo, hi;

  bool empty() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i])) return true;
    return false;
  }
  Rational volume() const {
    if (empty()) return Rational(0);
    Rational v(1);
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
  friend bool operator==(const Box &, const Box &) = default;
};

inline Rational intersection_volume(const Box &a, const Box &b) {
  Rational v(1);
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    Rational lo = std::max(a.lo[i], b.lo[i]), hi = std::min(a.hi[i], b.hi[i]);
    if (!(lo < hi)) return Rational(0);
    v *= hi - lo;
  }
  return v;
}

namespace detail {

inline std::vector<Box> canonical_boxes(const std::vector<Box> &boxes, std::size_t n) {
  std::vector<Rational> cuts;
  for (const auto &b : boxes) {
    cuts.push_back(b.lo[0]);
    cuts.push_back(b.hi[0]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  struct Slab {
    Rational lo, hi;
    std::vector<Box> section;
  };
  std::vector<Slab> slabs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    std::vector<Box> sub;
    bool covered = false;
    for (const auto &b : boxes)
      if (b.lo[0] <= cuts[i] && cuts[i + 1] <= b.hi[0]) {
        covered = true;
        if (n > 1) sub.push_back({RatVec(b.lo.begin() + 1, b.lo.end()), RatVec(b.hi.begin() + 1, b.hi.end())});
      }
    if (!covered) continue;
    std::vector<Box> section = n > 1 ? canonical_boxes(sub, n - 1) : std::vector<Box>{{RatVec{}, RatVec{}}};
    if (!slabs.empty() && slabs.back().hi == cuts[i] && slabs.back().section == section)
      slabs.back().hi = cuts[i + 1];
    else
      slabs.push_back({cuts[i], cuts[i + 1], std::move(section)});
  }
  std::vector<Box> out;
  for (const auto &s : slabs)
    for (const auto &c : s.section) {
      Box b{{s.lo}, {s.hi}};
      b.lo.insert(b.lo.end(), c.lo.begin(), c.lo.end());
      b.hi.insert(b.hi.end(), c.hi.begin(), c.hi.end());
      out.push_back(std::move(b));
    }
  return out;
}

}  // namespace detail

/// Finite union of rational boxes in canonical form: disjoint boxes from a slab sweep along
/// the first axis, equal adjacent cross-sections merged.
class RegionSet {
public:
  RegionSet() = default;
  RegionSet(std::size_t n, std::vector<Box> boxes) : n_(n) {
    if (n == 0) throw DimError("region dimension must be positive");
    std::vector<Box> kept;
    for (auto &b : boxes) {
      if (b.lo.size() != n || b.hi.size() != n) throw DimError("box dimension mismatch");
      if (!b.empty()) kept.push_back(std::move(b));
    }
    boxes_ = kept.empty() ? kept : detail::canonical_boxes(kept, n);
  }

  static RegionSet intervals(const std::vector<std::pair<Rational, Rational>> &iv) {
    std::vector<Box> b;
    for (const auto &[lo, hi] : iv) b.push_back({{lo}, {hi}});
    return RegionSet(1, std::move(b));
  }

  std::size_t dim() const { return n_; }
  const std::vector<Box> &boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  Rational measure() const {
    Rational m(0);
    for (const auto &b : boxes_) m += b.volume();
    return m;
  }

  RegionSet translate(const RatVec &k) const {
    if (k.size() != n_) throw DimError("translation dimension mismatch");
    std::vector<Box> out = boxes_;
    for (auto &b : out)
      for (std::size_t i = 0; i < n_; ++i) {
        b.lo[i] += k[i];
        b.hi[i] += k[i];
      }
    return RegionSet(n_, std::move(out));
  }

  /// Coordinate-wise width of the bounding box.
  RatVec widths() const {
    RatVec w(n_, Rational(0));
    if (boxes_.empty()) return w;
    for (std::size_t i = 0; i < n_; ++i) {
      Rational lo = boxes_[0].lo[i], hi = boxes_[0].hi[i];
      for (const auto &b : boxes_) {
        lo = std::min(lo, b.lo[i]);
        hi = std::max(hi, b.hi[i]);
      }
      w[i] = hi - lo;
    }
    return w;
  }

  friend bool operator==(const RegionSet &, const RegionSet &) = default;

private:
  std::size_t n_ = 0;
  std::vector<Box> boxes_;
};

/// Support of a step function as a 1-D region.
inline RegionSet support_region(const std::vector<StepFunction> &fs) {
  std::vector<std::pair<Rational, Rational>> iv;
  for (const auto &f : fs) {
    const auto &b = f.breakpoints();
    for (std::size_t k = 0; k < f.pieces(); ++k)
      if (!f.values()[k].is_zero()) iv.emplace_back(b[k], b[k + 1]);
  }
  return RegionSet::intervals(iv);
}

/// |K n (K + k)|.
inline Rational overlap_measure(const RegionSet &K, const RatVec &k) {
  if (k.size() != K.dim()) throw DimError("shift dimension mismatch");
  Rational m(0);
  for (const auto &a : K.boxes())
    for (Box b : K.boxes()) {
      for (std::size_t i = 0; i < K.dim(); ++i) {
        b.lo[i] += k[i];
        b.hi[i] += k[i];
      }
      m += intersection_volume(a, b);
    }
  return m;
}

namespace detail {

/// Nonzero integer k with |k_i| < width_i, ordered by sup-norm shell, then coordinate-wise by
/// (|k_i|, k_i < 0).
inline std::vector<IntVec> shift_range(const RegionSet &K) {
  const std::size_t n = K.dim();
  std::vector<long> bound(n);
  RatVec w = K.widths();
  long smax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bound[i] = w[i].ceil().get_si();
    smax = std::max(smax, bound[i]);
  }
  std::vector<IntVec> all;
  IntVec k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = -bound[i];
  if (K.empty()) return all;
  for (;;) {
    bool zero = true;
    for (const auto &c : k) zero = zero && c == 0;
    if (!zero) all.push_back(k);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (k[i] < bound[i]) {
        ++k[i];
        break;
      }
      k[i] = -bound[i];
    }
    if (i == n) break;
  }
  auto key = [](const IntVec &v) {
    BigInt s = 0;
    std::vector<std::pair<BigInt, bool>> parts;
    for (const auto &c : v) {
      s = std::max(s, BigInt(abs(c)));
      parts.emplace_back(abs(c), c < 0);
    }
    return std::make_pair(s, parts);
  };
  std::stable_sort(all.begin(), all.end(), [&](const IntVec &a, const IntVec &b) { return key(a) < key(b); });
  return all;
}

inline RatVec to_rat(const IntVec &k) {
  RatVec r;
  for (const auto &c : k) r.push_back(Rational(c));
  return r;
}

}  // namespace detail

/// Integer shifts with positive overlap, in enumeration order.
inline std::vector<std::pair<IntVec, Rational>> overlapping_shifts(const RegionSet &K) {
  std::vector<std::pair<IntVec, Rational>> out;
  for (const auto &k : detail::shift_range(K)) {
    Rational m = overlap_measure(K, detail::to_rat(k));
    if (m.sign() > 0) out.emplace_back(k, m);
  }
  return out;
}

struct GainWitness {
  IntVec k;
  Rational measure;
};

struct GainVerdict {
  Status status = Status::Holds;
  std::optional<GainWitness> witness;
};

/// Holds iff |K n (K + k)| = 0 for every k in Z^n outside the dual of Lambda.
inline GainVerdict si_gain_check(const RegionSet &K, const Lattice &lambda) {
  if (lambda.dim() != K.dim()) throw DimError("lattice and region dimensions differ");
  if (!is_sublattice(Lattice::integer(K.dim()), lambda)) throw NotSublattice("Z^n is not inside Lambda");
  Lattice ld = dual(lambda);
  for (const auto &[k, m] : overlapping_shifts(K))
    if (!ld.member(detail::to_rat(k))) return {Status::Violated, GainWitness{k, m}};
  return {Status::Holds, std::nullopt};
}

struct ClassResult {
  bool infinite = false;
  long r = 0;

  std::string str() const { return infinite ? "inf" : std::to_string(r); }
  bool at_least(long s) const { return infinite || r >= s; }
  friend bool operator==(const ClassResult &, const ClassResult &) = default;
};

/// Largest r <= r_max with every overlapping integer shift in B^r Z^n; infinite when no
/// nonzero integer shift overlaps.
inline ClassResult behera_class(const RegionSet &K, const Dilation &D, long r_max) {
  if (!D.is_integer()) throw Unsupported("class computation needs an integer dilation matrix");
  if (D.dim() != K.dim()) throw DimError("dilation and region dimensions differ");
  if (r_max < 0) throw BadIndex("r_max must be non-negative");
  auto S = overlapping_shifts(K);
  if (S.empty()) return {true, 0};
  long r = 0;
  for (long s = 1; s <= r_max; ++s) {
    Lattice Bs(D.B_power(s));
    bool inside = true;
    for (const auto &e : S) inside = inside && Bs.member(detail::to_rat(e.first));
    if (!inside) break;
    r = s;
  }
  return {false, r};
}

struct CrosscheckRow {
  long s;
  Status parseval;   // check_parseval at lambda = a^s
  bool cumulative;   // Parseval for every s' <= s
  bool class_at_least;
  bool agree;
};

struct CrosscheckReport {
  ClassResult klass;
  std::vector<CrosscheckRow> rows;
  bool agree() const {
    return std::all_of(rows.begin(), rows.end(), [](const CrosscheckRow &r) { return r.agree; });
  }
};

/// Compares Parseval at lambda = a^s, s = 1..r, with the support criterion class >= s.
inline CrosscheckReport oversample_crosscheck(const GeneratorSet &Psi, long a, long r) {
  if (a < 2) throw BadDilation("dilation must be an integer >= 2");
  if (Psi.a != Rational(a)) throw BadDilation("generator dilation differs from a");
  if (r < 0) throw BadIndex("r must be non-negative");
  if (!Psi.semi_orthogonal) throw Unsupported("generator is not declared semi-orthogonal");
  if (check_parseval(Psi, 1).status != Status::Holds)
    throw Unsupported("generator is not a Parseval wavelet for lambda = 1");
  CrosscheckReport rep;
  rep.klass = behera_class(support_region(Psi.psi), Dilation::scalar(Rational(a)), r);
  bool cumulative = true;
  long lambda = 1;
  for (long s = 1; s <= r; ++s) {
    lambda *= a;
    Status st = check_parseval(Psi, lambda).status;
    cumulative = cumulative && st == Status::Holds;
    bool cls = rep.klass.at_least(s);
    rep.rows.push_back({s, st, cumulative, cls, cumulative == cls});
  }
  return rep;
}

}  // namespace ovs
