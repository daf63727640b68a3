#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ovs/approx.hpp"
#include "ovs/conditions.hpp"
#include "ovs/step_function.hpp"
#include "ovs/verdict.hpp"

namespace ovs {

/// Fourier-side generators psi_hat_1..psi_hat_L for the dilation a = p/q > 1.
struct GeneratorSet {
  std::vector<StepFunction> psi;
  Rational a;
  bool away_from_zero = true;
  bool semi_orthogonal = false;

  GeneratorSet() = default;
  GeneratorSet(std::vector<StepFunction> generators, Rational dilation)
      : psi(std::move(generators)), a(std::move(dilation)) {
    validate();
  }

  void validate() const {
    if (!(a > Rational(1))) throw BadDilation("dilation must be a rational number > 1");
  }
  long p() const { return a.num().get_si(); }
  long q() const { return a.den().get_si(); }
};

/// One period of t_0 on -[1,a) u [1,a) when periodic, otherwise the full function.
struct TAlpha {
  StepFunction values;
  bool periodic = false;
};

struct FrameWitness {
  BigInt alpha;
  Rational lo, hi;
  ComplexQuad value;
};

struct FrameVerdict {
  Status status = Status::Holds;
  std::optional<FrameWitness> witness;
};

namespace detail {

inline void require_compatible(const GeneratorSet &psi, const GeneratorSet &phi) {
  psi.validate();
  phi.validate();
  if (psi.a != phi.a) throw BadDilation("generator sets use different dilations");
  if (psi.psi.size() != phi.psi.size()) throw DimError("generator sets differ in size");
}

inline void require_away_from_zero(const GeneratorSet &g) {
  for (const auto &f : g.psi)
    if (!f.vanishes_near_zero())
      throw Unsupported("generator support must be bounded away from 0");
}

inline void require_away_from_zero(const StepFunction &f) {
  if (!f.vanishes_near_zero()) throw Unsupported("support must be bounded away from 0");
}

struct Extent {
  bool empty = true;
  Rational lo, hi;      // hull of the support
  Rational rmin, rmax;  // radial extent
};

inline Extent extent(const std::vector<StepFunction> &fs) {
  Extent e;
  for (const auto &f : fs) {
    auto h = f.hull();
    if (!h) continue;
    auto r = *f.radial_extent();
    if (e.empty) {
      e = {false, h->first, h->second, r.first, r.second};
      continue;
    }
    e.lo = std::min(e.lo, h->first);
    e.hi = std::max(e.hi, h->second);
    e.rmin = std::min(e.rmin, r.first);
    e.rmax = std::max(e.rmax, r.second);
  }
  return e;
}

inline Extent extent(const StepFunction &f) { return extent(std::vector<StepFunction>{f}); }

/// Largest shift that can still make the two supports meet.
inline Rational reach(const Extent &x, const Extent &y) {
  if (x.empty || y.empty) return Rational(0);
  return std::max((y.hi - x.lo).abs(), (x.hi - y.lo).abs());
}

inline BigInt ceil_int(const Rational &r) { return r.ceil(); }

inline bool mod_zero(const BigInt &x, long m) { return divides(BigInt(m), x); }

}  // namespace detail

/// t_alpha(xi) = sum_l sum_{j : a^{-j} alpha in lambda Z} psi_l(a^{-j} xi) conj(phi_l(a^{-j}(xi + alpha))).
inline TAlpha t_alpha(const GeneratorSet &Psi, const GeneratorSet &Phi, long lambda, const BigInt &alpha) {
  detail::require_compatible(Psi, Phi);
  if (lambda < 1) throw BadIndex("lambda must be a positive integer");
  detail::require_away_from_zero(Psi);
  detail::require_away_from_zero(Phi);
  const Rational &a = Psi.a;
  const Rational one(1);
  TAlpha out;
  if (alpha == 0) {
    out.periodic = true;
    auto ep = detail::extent(Psi.psi), eq = detail::extent(Phi.psi);
    if (ep.empty || eq.empty) return out;
    Rational lo = std::max(ep.rmin, eq.rmin), hi = std::min(ep.rmax, eq.rmax);
    if (!(lo < hi)) return out;
    // scales s = a^e with [s, s a) meeting [lo, hi]
    long e = 0;
    Rational s(1);
    while (s * a > lo) { s /= a; --e; }
    while (!(s * a > lo)) { s *= a; ++e; }
    StepFunction acc;
    for (; s <= hi; s *= a, ++e)
      for (std::size_t l = 0; l < Psi.psi.size(); ++l) {
        StepFunction term = (Psi.psi[l] * Phi.psi[l].conj()).dilate(s);
        acc += term.restrict_to(one, a) + term.restrict_to(-a, -one);
      }
    out.values = acc;
    return out;
  }
  const Rational al(alpha);
  StepFunction acc;
  auto add_term = [&](const Rational &s) {
    for (std::size_t l = 0; l < Psi.psi.size(); ++l)
      acc += (Psi.psi[l] * Phi.psi[l].shift(s * al).conj()).dilate(s);
  };
  auto in_lambda = [&](const Rational &x) { return x.is_integer() && detail::mod_zero(x.num(), lambda); };
  const long p = Psi.p();
  BigInt pj = 1;
  Rational s(1);
  for (long j = 0; divides(pj, alpha); ++j) {
    if (in_lambda(s * al)) add_term(s);
    pj *= p;
    s /= a;
  }
  Rational W = detail::reach(detail::extent(Psi.psi), detail::extent(Phi.psi));
  for (Rational t = a; (t * al).abs() <= W; t *= a)
    if (in_lambda(t * al)) add_term(t);
  out.values = acc;
  return out;
}

/// Exact point evaluation, using multiplicative periodicity for alpha = 0.
inline ComplexQuad t_alpha_at(const TAlpha &t, const Rational &xi, const Rational &a) {
  if (!t.periodic) return t.values(xi);
  if (xi.is_zero()) return {};
  Rational y = xi;
  if (y.sign() > 0) {
    while (y >= a) y /= a;
    while (y < Rational(1)) y *= a;
  } else {
    while (y < -a) y /= a;
    while (y >= Rational(-1)) y *= a;
  }
  return t.values(y);
}

namespace detail {

inline std::optional<FrameWitness> diagonal_defect(const TAlpha &t0, const Rational &a) {
  const Rational one(1);
  StepFunction unit = StepFunction::indicator(-a, -one) + StepFunction::indicator(one, a);
  StepFunction d = t0.values - unit;
  const auto &b = d.breakpoints();
  for (std::size_t k = 0; k < d.pieces(); ++k)
    if (!d.values()[k].is_zero())
      return FrameWitness{BigInt(0), b[k], b[k + 1], t0.values(b[k])};
  return std::nullopt;
}

inline std::optional<FrameWitness> first_nonzero(const StepFunction &f, const BigInt &alpha) {
  const auto &b = f.breakpoints();
  for (std::size_t k = 0; k < f.pieces(); ++k)
    if (!f.values()[k].is_zero()) return FrameWitness{alpha, b[k], b[k + 1], f.values()[k]};
  return std::nullopt;
}

inline BigInt alpha_bound(const GeneratorSet &Psi, const GeneratorSet &Phi) {
  auto e1 = extent(Psi.psi), e2 = extent(Phi.psi);
  Rational r(0);
  if (!e1.empty) r = e1.rmax;
  if (!e2.empty) r = std::max(r, e2.rmax);
  return ceil_int(r * Rational(2));
}

}  // namespace detail

/// Holds iff t_alpha = delta_{alpha,0} for every alpha; alpha is scanned as 0, 1, -1, 2, -2, ...
inline FrameVerdict check_dual(const GeneratorSet &Psi, const GeneratorSet &Phi, long lambda) {
  TAlpha t0 = t_alpha(Psi, Phi, lambda, 0);
  if (auto w = detail::diagonal_defect(t0, Psi.a)) return {Status::Violated, w};
  BigInt bound = detail::alpha_bound(Psi, Phi);
  for (BigInt k = 1; k <= bound; ++k)
    for (const BigInt &al : {BigInt(k), BigInt(-k)}) {
      TAlpha t = t_alpha(Psi, Phi, lambda, al);
      if (auto w = detail::first_nonzero(t.values, al)) return {Status::Violated, w};
    }
  return {Status::Holds, std::nullopt};
}

inline FrameVerdict check_parseval(const GeneratorSet &Psi, long lambda) {
  return check_dual(Psi, Psi, lambda);
}

/// Parseval test through the reduced offset family alpha = q^s lambda t with q, p not dividing t,
/// each summed over scales a^0..a^s (all scales a^i, i >= 0, when q = 1).
inline FrameVerdict check_parseval_offsets(const GeneratorSet &Psi, long lambda) {
  TAlpha t0 = t_alpha(Psi, Psi, lambda, 0);
  if (auto w = detail::diagonal_defect(t0, Psi.a)) return {Status::Violated, w};
  const Rational &a = Psi.a;
  const long p = Psi.p(), q = Psi.q();
  auto ext = detail::extent(Psi.psi);
  Rational W = detail::reach(ext, ext);
  BigInt qs = 1;
  for (long s = 0; Rational(qs * lambda) <= W; ++s, qs *= q) {
    BigInt tmax = (W / Rational(qs * lambda)).floor();
    for (BigInt k = 1; k <= tmax; ++k)
      for (const BigInt &t : {BigInt(k), BigInt(-k)}) {
        if ((q > 1 && detail::mod_zero(t, q)) || detail::mod_zero(t, p)) continue;
        Rational off(qs * lambda * t);
        StepFunction acc;
        Rational ai(1);
        for (long i = 0; (q == 1 || i <= s) && (ai * off).abs() <= W; ++i, ai *= a)
          for (const auto &f : Psi.psi) acc += (f * f.shift(ai * off).conj()).dilate(ai);
        if (auto w = detail::first_nonzero(acc, qs * lambda * t)) return {Status::Violated, w};
      }
    if (q == 1) break;
  }
  return {Status::Holds, std::nullopt};
}

struct SemiOrthogonalityWitness {
  std::size_t l, l2;
  long j;
  Rational lo, hi;
  ComplexQuad value;
};

/// Exact test of <D^j T_k psi_l, T_k' psi_l2> = 0 for j >= 1 and integer dilation: the
/// periodization sum_m psi_l2(eta + m) conj psi_l(a^j (eta + m)) must vanish on [0,1).
inline std::optional<SemiOrthogonalityWitness> semi_orthogonality_defect(const GeneratorSet &Psi) {
  Psi.validate();
  if (!Psi.a.is_integer()) throw Unsupported("semi-orthogonality test needs an integer dilation");
  detail::require_away_from_zero(Psi);
  auto e = detail::extent(Psi.psi);
  if (e.empty) return std::nullopt;
  const Rational one(1);
  Rational aj = Psi.a;
  for (long j = 1; aj * e.rmin <= e.rmax; ++j, aj *= Psi.a)
    for (std::size_t l = 0; l < Psi.psi.size(); ++l)
      for (std::size_t l2 = 0; l2 < Psi.psi.size(); ++l2) {
        StepFunction g = Psi.psi[l2] * Psi.psi[l].dilate(aj).conj();
        if (g.is_zero()) continue;
        auto h = *g.hull();
        StepFunction per;
        for (BigInt m = h.first.floor(); Rational(m) < h.second; ++m)
          per += g.shift(Rational(m)).restrict_to(Rational(0), one);
        const auto &b = per.breakpoints();
        for (std::size_t k = 0; k < per.pieces(); ++k)
          if (!per.values()[k].is_zero()) return SemiOrthogonalityWitness{l, l2, j, b[k], b[k + 1], per.values()[k]};
      }
  return std::nullopt;
}

inline bool is_semi_orthogonal(const GeneratorSet &Psi) { return !semi_orthogonality_defect(Psi); }

/// Exact supremum of sum_j |psi(a^{-j} xi)|^2.
inline QuadScalar bessel_bound(const GeneratorSet &Psi) {
  TAlpha t0 = t_alpha(Psi, Psi, 1, 0);
  QuadScalar best(0);
  for (const auto &v : t0.values.values())
    if (v.re() > best) best = v.re();
  return best;
}

/// c_j(m) = int f(xi) conj f(xi + a^j m) conj psi(a^{-j} xi) psi(a^{-j} xi + m) dxi.
inline ComplexQuad frame_coefficient(const StepFunction &f, const StepFunction &psi, const Rational &a,
                                     long lambda, long j, const Rational &m) {
  if (!(a > Rational(1))) throw BadDilation("dilation must be a rational number > 1");
  if (lambda < 1) throw BadIndex("lambda must be a positive integer");
  if (!m.is_integer() || !detail::mod_zero(m.num(), lambda))
    throw BadIndex("m = " + m.str() + " is not in " + std::to_string(lambda) + "Z");
  detail::require_away_from_zero(f);
  detail::require_away_from_zero(psi);
  Rational aj = pow(a, j), inv = pow(a, -j);
  StepFunction g = f * f.shift(aj * m).conj();
  if (g.is_zero()) return {};
  StepFunction h = psi.conj().dilate(inv) * psi.shift(m).dilate(inv);
  return (g * h).integral();
}

struct Coefficient {
  std::size_t l;
  long j;
  BigInt m;
  ComplexQuad c;
};

struct FunctionalReport {
  QuadScalar N;
  QuadScalar norm2;
  std::vector<Coefficient> table;  // nonzero entries only, ordered by (l, j, m)
  long j_min = 0, j_max = -1;
  BigInt m_max = 0;
};

namespace detail {

/// All nonzero c_{j,l}(m) for m in step*Z; every other coefficient vanishes by support.
inline FunctionalReport coefficient_table(const StepFunction &f, const GeneratorSet &Psi, long step) {
  Psi.validate();
  require_away_from_zero(f);
  require_away_from_zero(Psi);
  FunctionalReport r;
  r.norm2 = (f * f.conj()).integral().re();
  auto ef = extent(f), ep = extent(Psi.psi);
  if (ef.empty || ep.empty) return r;
  const Rational &a = Psi.a;
  // active scales: a^{-j} in [rmin_psi / rmax_f, rmax_psi / rmin_f]
  Rational lo = ep.rmin / ef.rmax, hi = ep.rmax / ef.rmin;
  long j = 0;
  Rational s(1);  // s = a^{-j}
  while (s >= lo) { s /= a; ++j; }
  while (s < lo) { s *= a; --j; }
  r.j_max = j;
  r.j_min = j + 1;
  for (; s <= hi; s *= a, --j) r.j_min = j;
  if (r.j_min > r.j_max) return r;
  Rational wp = reach(ep, ep), wf = reach(ef, ef);
  for (std::size_t l = 0; l < Psi.psi.size(); ++l)
    for (long jj = r.j_min; jj <= r.j_max; ++jj) {
      Rational mlim = std::min(wp, wf / pow(a, jj));
      BigInt kmax = (mlim / Rational(step)).floor();
      r.m_max = std::max(r.m_max, BigInt(kmax * step));
      for (BigInt k = -kmax; k <= kmax; ++k) {
        BigInt m = k * step;
        ComplexQuad c = frame_coefficient(f, Psi.psi[l], a, step, jj, Rational(m));
        if (!c.is_zero()) r.table.push_back({l, jj, m, c});
      }
    }
  return r;
}

}  // namespace detail

/// N(f, (1/lambda)Z) = sum_l sum_j sum_{m in lambda Z} c_{j,l}(m), evaluated exactly.
inline FunctionalReport frame_functional(const StepFunction &f, const GeneratorSet &Psi, long lambda) {
  if (lambda < 1) throw BadIndex("lambda must be a positive integer");
  FunctionalReport r = detail::coefficient_table(f, Psi, lambda);
  ComplexQuad total;
  for (const auto &e : r.table) total += e.c;
  if (!total.im().is_zero()) throw std::logic_error("frame functional has a nonzero imaginary part");
  r.N = total.re();
  return r;
}

struct AveragingRow {
  long J;
  double eps;
  BigInt size;
  double average;
  double target;
  double error;
  double bound;
};

struct AveragingOptions {
  bool perturb = false;
  std::uint64_t seed = 0;
  ConstellationOptions constellation;
};

/// Averages N(T_d f, Z) over multiscale constellations K_{J,eps} and compares with N(f, (1/lambda)Z).
inline std::vector<AveragingRow> averaging_experiment(const StepFunction &f, const GeneratorSet &Psi,
                                                      long lambda, const std::vector<long> &J_schedule,
                                                      const std::vector<double> &eps_schedule,
                                                      const AveragingOptions &opts = {}) {
  if (J_schedule.size() != eps_schedule.size())
    throw SchemaError("J and eps schedules differ in length");
  if (lambda < 1) throw BadIndex("lambda must be a positive integer");
  Lattice L = Lattice::scaled(1, Rational(1, lambda));
  Dilation D = Dilation::scalar(Psi.a);
  long jmax = 1;
  for (long J : J_schedule) {
    if (J < 0) throw SchemaError("J must be non-negative");
    jmax = std::max(jmax, J);
  }
  if (check_strong(D, L, jmax).status == Status::Violated)
    throw HypothesisUnverifiable("the lattice violates the strong oversampling condition");
  FunctionalReport all = detail::coefficient_table(f, Psi, 1);
  const double target = frame_functional(f, Psi, lambda).N.to_double();
  std::vector<AveragingRow> rows;
  for (std::size_t i = 0; i < J_schedule.size(); ++i) {
    const long J = J_schedule[i];
    const double eps = eps_schedule[i];
    Constellation K = multiscale_constellation(D.A(), L, J, eps, opts.constellation);
    if (opts.perturb) K = perturbed(K, opts.seed + i);
    std::complex<double> avg = 0;
    double bound = 0;
    for (const auto &e : all.table) {
      const Rational x = pow(Psi.a, e.j) * Rational(e.m);
      const std::complex<double> c = e.c.to_complex();
      avg += c * exp_sum_average(K, RatVec{x});
      if (e.m == 0) continue;
      const double cap = detail::mod_zero(e.m, lambda) ? 2.0 : 1.0;
      const double near = transversal_error_bound(std::vector<double>{x.to_double()}, eps);
      bound += std::abs(c) * (std::labs(e.j) <= J ? std::min(near, cap) : cap);
    }
    rows.push_back({J, eps, K.size(), avg.real(), target, std::abs(avg - target), bound});
  }
  return rows;
}

}  // namespace ovs
