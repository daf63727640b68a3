#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "ovs/builtins.hpp"
#include "support.hpp"

using namespace ovs;
namespace fx = ovs::fixtures;

namespace {

// Tolerances and limits pinned for each criterion.
constexpr double kCriterion1Seconds = 5.0;
constexpr long kSweepJmax = 5;
constexpr int kBatteryInstances = 500;
constexpr long kBatteryJmax = 6;
constexpr double kCriterion3Seconds = 60.0;
constexpr int kDualityPairs = 200;
constexpr int kExpSumInstances = 100;
constexpr double kExpSumEpsMax = 0.01;
constexpr double kExpSumMmax = 20.0;
constexpr double kExpSumSlack = 1e-12;
constexpr double kAveragingRelTol = 1e-6;
constexpr double kCriterion6Seconds = 60.0;
constexpr int kFunctionalSamples = 20;
constexpr int kThresholdLattices = 50;
constexpr int kThresholdProbes = 100;
constexpr double kThresholdFloor = 1e-6;

Rational R(long p, long q = 1) { return Rational(p, q); }

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(std::string s) { return {false, std::move(s)}; }

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto g = builtins::fig1();
  if (check_parseval(g, 1).status != Status::Holds) return fail("lambda=1 is not Holds");
  auto v = check_parseval(g, 2);
  if (v.status != Status::Violated || !v.witness) return fail("lambda=2 is not Violated");
  const auto &w = *v.witness;
  if (abs(w.alpha) != 2) return fail("witness alpha=" + w.alpha.get_str());
  if (w.value != ComplexQuad(R(1, 2))) return fail("witness value " + w.value.str());
  if (w.lo < R(-1) || w.hi > R(-2, 3) || !(w.lo < w.hi)) return fail("witness interval outside [-1,-2/3)");
  for (long lam : {4, 5, 7})
    if (check_parseval(g, lam).status != Status::Holds) return fail("lambda=" + std::to_string(lam) + " not Holds");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= kCriterion1Seconds) return fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << "alpha=" << w.alpha << " t=" << w.value << " on [" << w.lo << "," << w.hi << ")";
  return {true, s.str()};
}

Outcome criterion2() {
  int instances = 0, violated = 0;
  for (long p = 2; p <= 7; ++p)
    for (long q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      Dilation a = Dilation::scalar(R(p, q));
      for (long lam = 1; lam <= 30; ++lam) {
        ++instances;
        bool cert = certificate_1d(p, q, lam);
        auto v = check_strong(a, inverse_scaled(1, lam), kSweepJmax);
        bool holds = v.status == Status::Holds || v.status == Status::CertifiedHolds;
        if (holds != cert) return fail("disagreement at a=" + std::to_string(p) + "/" + std::to_string(q) +
                                       " lambda=" + std::to_string(lam));
        if (!cert) {
          if (v.status != Status::Violated || !v.witness || v.witness->scale != 1)
            return fail("no J=1 witness at a=" + std::to_string(p) + "/" + std::to_string(q) +
                        " lambda=" + std::to_string(lam));
          ++violated;
        }
      }
    }
  return {true, std::to_string(instances) + " instances, " + std::to_string(violated) + " violated at J=1"};
}

std::optional<Dilation> random_expansive(std::mt19937_64 &rng, long det_bound) {
  IntMatrix m = fx::random_int_matrix(rng, 2, 2, 4);
  BigInt d = abs(det(m));
  if (d < 2 || d > det_bound) return std::nullopt;
  try {
    return Dilation(to_rational(m));
  } catch (const BadDilation &) {
    return std::nullopt;
  }
}

Outcome criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  int done = 0, positive = 0;
  while (done < kBatteryInstances) {
    auto D = random_expansive(rng, 8);
    if (!D) continue;
    Lattice l = fx::random_superlattice_of_integers(rng, 2, 6);
    auto r = equivalence_battery(*D, l, kBatteryJmax);
    if (!r.agree()) return fail("disagreement for A=" + to_string(D->A()) + " Lambda=" + to_string(l.basis()));
    positive += r.holds[0];
    ++done;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= kCriterion3Seconds) return fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << done << " instances, " << positive << " satisfy the conditions, " << secs << " s";
  return {true, s.str()};
}

Outcome criterion4() {
  std::mt19937_64 rng(2027);
  for (int it = 0; it < kDualityPairs; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice a = fx::random_lattice(rng, n), b = fx::random_lattice(rng, n);
    if (!(dual(intersect(a, b)) == sum(dual(a), dual(b)))) return fail("failure at pair " + std::to_string(it));
  }
  return {true, std::to_string(kDualityPairs) + " pairs"};
}

Outcome criterion5() {
  std::mt19937_64 rng(2028);
  double worst = 0;
  long probes = 0;
  for (int it = 0; it < kExpSumInstances; ++it) {
    std::size_t n = fx::uniform(rng, 1, 2);
    Lattice gam = fx::random_lattice(rng, n, 3, 2);
    IntMatrix C = fx::random_nonsingular(rng, n, 3);
    Lattice lam(gam.basis() * inverse(to_rational(C)));
    double eps = kExpSumEpsMax * (fx::uniform(rng, 1, 100) / 100.0);
    Constellation K = perturbed(build_constellation({{lam, gam}}, eps), it);
    Lattice gd = dual(gam), ld = dual(lam);
    for (int p = 0; p < 20; ++p) {
      RatVec c(n);
      for (auto &ci : c) ci = Rational(fx::uniform(rng, -6, 6));
      RatVec m = gd.basis() * c;
      auto md = to_double(m);
      double norm = 0;
      for (double x : md) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > kExpSumMmax) continue;
      ++probes;
      double err = std::abs(exp_sum_average(K, md) - (ld.member(m) ? 1.0 : 0.0));
      double bound = 2 * std::numbers::pi * norm * eps + kExpSumSlack;
      if (err > bound) return fail("violation at instance " + std::to_string(it));
      if (bound > 0) worst = std::max(worst, err / bound);
    }
  }
  std::ostringstream s;
  s << kExpSumInstances << " instances, " << probes << " probes, max error/bound " << worst;
  return {true, s.str()};
}

Outcome criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  auto g = builtins::fig1();
  StepFunction f = StepFunction::indicator(R(1), R(2));
  const double exact = frame_functional(f, g, 5).N.to_double();
  AveragingOptions opts;
  opts.perturb = true;
  opts.seed = 6;
  auto rows = averaging_experiment(f, g, 5, {1, 2, 3, 4, 5, 6}, {1e-2, 1e-3, 1e-4, 1e-5, 1e-5, 1e-5}, opts);
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].error > rows[i - 1].error) return fail("error increases at row " + std::to_string(i));
  double rel = std::abs(rows.back().average - exact) / exact;
  if (rel > kAveragingRelTol) return fail("final relative error " + std::to_string(rel));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= kCriterion6Seconds) return fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << rows.size() << " rows, N=" << exact << ", final relative error " << rel << ", " << secs << " s";
  return {true, s.str()};
}

Outcome criterion7() {
  std::mt19937_64 rng(2029);
  auto g = builtins::fig1();
  for (int it = 0; it < kFunctionalSamples; ++it) {
    StepFunction f = fx::random_step(rng, R(1, 3), R(5, 2), 5);
    auto r = frame_functional(f, g, 1);
    if (!(r.N == r.norm2)) return fail("N != |f|^2 at sample " + std::to_string(it));
  }
  return {true, std::to_string(kFunctionalSamples) + " step functions, exact equality"};
}

Outcome criterion8() {
  Dilation two = Dilation::scalar(R(2));
  if (!behera_class(builtins::region("shannon").value(), two, 8).infinite) return fail("Shannon class is finite");
  auto bp = behera_class(builtins::box_pair(), two, 8);
  if (!(bp == ClassResult{false, 1})) return fail("box-pair class " + bp.str());
  auto rep = oversample_crosscheck(builtins::shannon(), 2, 3);
  if (rep.rows.size() != 3 || !rep.agree()) return fail("Shannon crosscheck disagrees");
  return {true, "Shannon inf, box-pair 1, crosscheck agrees for s=1..3"};
}

Outcome criterion9() {
  auto g = builtins::fig1();
  Dilation a = Dilation::scalar(g.a);
  for (long lam : {5, 7}) {
    if (check_strong(a, inverse_scaled(1, lam), kSweepJmax).status != Status::CertifiedHolds)
      return fail("strong condition not certified at lambda=" + std::to_string(lam));
    if (check_parseval(g, lam).status != Status::Holds) return fail("Parseval fails at lambda=" + std::to_string(lam));
  }
  if (check_weak(a, inverse_scaled(1, 2), kSweepJmax).status != Status::Violated) return fail("weak not Violated at 2");
  if (check_parseval(g, 2).status != Status::Violated) return fail("Parseval not Violated at 2");
  int certified = 0;
  for (long lam = 1; lam <= 12; ++lam) {
    bool strong = check_strong(a, inverse_scaled(1, lam), kSweepJmax).status == Status::CertifiedHolds;
    bool weak = check_weak(a, inverse_scaled(1, lam), kSweepJmax).status == Status::CertifiedHolds;
    bool parseval = check_parseval(g, lam).status == Status::Holds;
    if ((strong || weak) && !parseval) return fail("implication contradicted at lambda=" + std::to_string(lam));
    certified += strong;
  }
  return {true, std::to_string(certified) + " certified lambda <= 12, no contradiction"};
}

Outcome criterion10() {
  std::mt19937_64 rng(2030);
  double worst = 1;
  for (int it = 0; it < kThresholdLattices; ++it) {
    std::size_t n = fx::uniform(rng, 1, 3);
    Lattice l = fx::random_lattice(rng, n);
    auto F = l.basis().columns();
    Lattice d = dual(l);
    std::vector<RatVec> probes;
    for (int p = 0; p < kThresholdProbes; ++p) {
      RatVec x(n);
      if (p % 2 == 0) {
        RatVec c(n);
        for (auto &ci : c) ci = Rational(fx::uniform(rng, -5, 5));
        x = d.basis() * c;
      } else {
        for (auto &c : x) c = fx::random_rational(rng, 20, 9);
      }
      probes.push_back(x);
    }
    // Largest eps0 = 10^-k such that membership matches for every 10^-j, j >= k, down to the floor.
    std::optional<double> eps0;
    for (int k = 12; k >= 1; --k) {
      Rational eps = Rational(1) / pow(Rational(10), static_cast<long>(k));
      bool match = true;
      for (const auto &x : probes) match = match && approx_dual_member(F, eps, x) == d.member(x);
      if (!match) break;
      eps0 = std::pow(10.0, -k);
    }
    if (!eps0 || *eps0 < kThresholdFloor) return fail("no threshold >= 1e-6 for lattice " + std::to_string(it));
    worst = std::min(worst, *eps0);
  }
  std::ostringstream s;
  s << kThresholdLattices << " lattices, smallest threshold found " << worst;
  return {true, s.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fig1 counterexample", criterion1},    {"1-D condition sweep", criterion2},
      {"six-condition battery", criterion3},  {"dual of intersection", criterion4},
      {"exponential sum bound", criterion5},  {"averaging convergence", criterion6},
      {"Parseval functional", criterion7},    {"shift-invariance gain", criterion8},
      {"end-to-end oversampling", criterion9}, {"approximate dual threshold", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2zu %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
