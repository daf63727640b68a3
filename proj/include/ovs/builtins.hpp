#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ovs/frames.hpp"
#include "ovs/sigain.hpp"

namespace ovs::builtins {

inline ComplexQuad inv_sqrt2(int sign = 1) { return ComplexQuad(QuadScalar(Rational(0), Rational(sign, 2), 2)); }

/// Generator read off the graph for a = 3/2: Parseval for lambda = 1 and lambda >= 4, not for lambda = 2.
inline StepFunction fig1_hat() {
  auto R = [](long p, long q) { return Rational(p, q); };
  return StepFunction({R(-3, 2), R(-1, 1), R(-2, 3), R(1, 1), R(4, 3), R(3, 2), R(2, 1)},
                      {inv_sqrt2(-1), inv_sqrt2(1), ComplexQuad(0), inv_sqrt2(1), ComplexQuad(1), inv_sqrt2(1)});
}

inline GeneratorSet fig1() {
  GeneratorSet g({fig1_hat()}, Rational(3, 2));
  return g;
}

/// chi of [-1,-1/2) u [1/2,1), a = 2; an orthonormal MSF wavelet.
inline GeneratorSet shannon() {
  StepFunction s = StepFunction::indicator(Rational(-1), Rational(-1, 2)) +
                   StepFunction::indicator(Rational(1, 2), Rational(1));
  GeneratorSet g({s}, Rational(2));
  g.semi_orthogonal = true;
  return g;
}

/// chi of [-16/7,-2) u [-1/2,-2/7) u [2/7,1/2) u [2,16/7), a = 2; an orthonormal MSF wavelet.
inline GeneratorSet journe() {
  StepFunction s = StepFunction::indicator(Rational(-16, 7), Rational(-2)) +
                   StepFunction::indicator(Rational(-1, 2), Rational(-2, 7)) +
                   StepFunction::indicator(Rational(2, 7), Rational(1, 2)) +
                   StepFunction::indicator(Rational(2), Rational(16, 7));
  GeneratorSet g({s}, Rational(2));
  g.semi_orthogonal = true;
  return g;
}

/// Semi-orthogonal Parseval wavelet for a = 2 that is not an MSF; its support has class 0.
inline GeneratorSet split() {
  auto R = [](long p, long q) { return Rational(p, q); };
  StepFunction s({R(-3, 2), R(-1, 1), R(-3, 4), R(-1, 2), R(1, 4), R(1, 2), R(1, 1)},
                 {inv_sqrt2(1), ComplexQuad(1), inv_sqrt2(1), ComplexQuad(0), inv_sqrt2(1), inv_sqrt2(-1)});
  GeneratorSet g({s}, Rational(2));
  g.semi_orthogonal = true;
  return g;
}

/// [0,1) u [2,3): odd shifts miss it, the shift 2 does not.
inline RegionSet box_pair() {
  return RegionSet::intervals({{Rational(0), Rational(1)}, {Rational(2), Rational(3)}});
}

inline std::vector<std::string> region_names() { return {"box-pair", "fig1", "journe", "shannon", "split"}; }

inline std::vector<std::string> generator_names() { return {"fig1", "journe", "shannon", "split"}; }

inline std::optional<GeneratorSet> generator(const std::string &name) {
  if (name == "fig1") return fig1();
  if (name == "shannon") return shannon();
  if (name == "journe") return journe();
  if (name == "split") return split();
  return std::nullopt;
}

inline std::optional<RegionSet> region(const std::string &name) {
  if (name == "box-pair") return box_pair();
  if (auto g = generator(name)) return support_region(g->psi);
  return std::nullopt;
}

}  // namespace ovs::builtins
