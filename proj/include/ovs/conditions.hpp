#pragma once

#include <Eigen/Eigenvalues>

#include <array>
#include <numeric>
#include <optional>

#include "ovs/lattice.hpp"
#include "ovs/verdict.hpp"

namespace ovs {

/// Expansive nonsingular rational dilation A; B = A^T acts on frequencies.
class Dilation {
public:
  explicit Dilation(RatMatrix A) : A_(std::move(A)) {
    if (!A_.square() || A_.rows() == 0) throw DimError("dilation must be a square matrix");
    if (det(A_).is_zero()) throw BadDilation("dilation is singular");
    if (!expansive()) throw BadDilation("dilation is not expansive");
    B_ = A_.transpose();
  }
  static Dilation scalar(const Rational &a) { return Dilation(RatMatrix{{a}}); }

  std::size_t dim() const { return A_.rows(); }
  const RatMatrix &A() const { return A_; }
  const RatMatrix &B() const { return B_; }
  RatMatrix B_power(long j) const { return power(B_, j); }
  bool is_integer() const { return is_integral(A_); }
  IntMatrix integer_matrix() const { return to_integer(A_); }

  /// Smallest eigenvalue modulus (floating point).
  double min_eigen_modulus() const {
    const std::size_t n = A_.rows();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = A_(i, j).to_double();
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    return es.eigenvalues().cwiseAbs().minCoeff();
  }

private:
  bool expansive() const {
    if (A_.rows() == 1) return A_(0, 0).abs() > Rational(1);
    return min_eigen_modulus() > 1.0 + 1e-9;
  }

  RatMatrix A_, B_;
};

enum class Certificate { None, IntegerInvariance, Gcd1D, ShiftedInvariance };

inline std::string to_string(Certificate c) {
  switch (c) {
  case Certificate::None: return "None";
  case Certificate::IntegerInvariance: return "IntegerInvariance";
  case Certificate::Gcd1D: return "Gcd1D";
  case Certificate::ShiftedInvariance: return "ShiftedInvariance";
  }
  return "?";
}

struct ConditionWitness {
  long scale = 0;  // J for the strong forms, j for the weak forms
  RatVec m;        // point of the left-hand side outside the target lattice
};

struct ConditionVerdict {
  Status status = Status::HoldsUpTo;
  std::optional<ConditionWitness> witness;
  Certificate certificate = Certificate::None;
  std::optional<long> bound;
};

namespace detail {

inline Lattice lambda_dual(const Lattice &lambda) {
  if (!is_sublattice(Lattice::integer(lambda.dim()), lambda))
    throw NotSublattice("Z^n is not contained in Lambda");
  return dual(lambda);
}

inline std::optional<RatVec> first_outside(const Lattice &lhs, const Lattice &target) {
  for (const auto &c : lhs.basis().columns())
    if (!target.member(c)) return c;
  return std::nullopt;
}

/// 0, 1, -1, 2, -2, ..., jmax, -jmax
inline std::vector<long> symmetric_order(long jmax) {
  std::vector<long> out{0};
  for (long j = 1; j <= jmax; ++j) {
    out.push_back(j);
    out.push_back(-j);
  }
  return out;
}

inline void require_dims(const Dilation &D, const Lattice &l) {
  if (D.dim() != l.dim()) throw DimError("dilation and lattice dimensions differ");
}

}  // namespace detail

/// 1-D certificate: for a = p/q in lowest terms, gcd(lambda, p q) == 1.
inline bool certificate_1d(long p, long q, long lambda) {
  if (q < 1 || p <= q) throw BadDilation("need p > q >= 1");
  if (std::gcd(p, q) != 1) throw BadDilation("p and q are not coprime");
  if (lambda < 1) throw std::invalid_argument("lambda must be a positive integer");
  return std::gcd(lambda, p * q) == 1;
}

/// B Z^n ∩ Lambda* ⊂ B Lambda* ⊂ Lambda*  (integer A).
inline bool integer_invariance_condition(const Dilation &D, const Lattice &lambda) {
  detail::require_dims(D, lambda);
  Lattice ld = detail::lambda_dual(lambda);
  Lattice bl = ld.image(D.B());
  if (!is_sublattice(bl, ld)) return false;
  return is_sublattice(intersect(Lattice(D.B()), ld), bl);
}

namespace detail {

/// 1-D lattice (1/lambda)Z -> lambda, dilation a -> (p, q) with a = p/q, p > q >= 1.
inline std::optional<std::array<long, 3>> one_dim_data(const Dilation &D, const Lattice &lambda) {
  if (D.dim() != 1) return std::nullopt;
  Rational a = D.A()(0, 0).abs();
  Rational inv = Rational(1) / lambda.basis()(0, 0);
  if (!inv.is_integer() || !a.num().fits_slong_p() || !a.den().fits_slong_p() ||
      !inv.num().fits_slong_p())
    return std::nullopt;
  return std::array<long, 3>{a.num().get_si(), a.den().get_si(), inv.num().get_si()};
}

}  // namespace detail

/// (sum_{|j|<=J} B^j Lambda*) ∩ Z^n ⊂ Lambda*, tested for J = 1..jmax.
inline ConditionVerdict check_strong(const Dilation &D, const Lattice &lambda, long jmax) {
  detail::require_dims(D, lambda);
  Lattice ld = detail::lambda_dual(lambda);
  Lattice Zn = Lattice::integer(lambda.dim());
  Lattice G = ld;
  for (long J = 1; J <= jmax; ++J) {
    G = sum({G, ld.image(D.B_power(J)), ld.image(D.B_power(-J))});
    if (auto m = detail::first_outside(intersect(G, Zn), ld))
      return {Status::Violated, ConditionWitness{J, *m}, Certificate::None, std::nullopt};
  }
  if (D.is_integer() && integer_invariance_condition(D, lambda))
    return {Status::CertifiedHolds, std::nullopt, Certificate::IntegerInvariance, std::nullopt};
  if (auto d = detail::one_dim_data(D, lambda); d && certificate_1d((*d)[0], (*d)[1], (*d)[2]))
    return {Status::CertifiedHolds, std::nullopt, Certificate::Gcd1D, std::nullopt};
  return {Status::HoldsUpTo, std::nullopt, Certificate::None, jmax};
}

/// B^j Z^n ∩ Lambda* ⊂ B^j Lambda* for |j| <= jmax.
inline ConditionVerdict check_weak(const Dilation &D, const Lattice &lambda, long jmax) {
  detail::require_dims(D, lambda);
  Lattice ld = detail::lambda_dual(lambda);
  for (long j : detail::symmetric_order(jmax)) {
    RatMatrix Bj = D.B_power(j);
    if (auto m = detail::first_outside(intersect(Lattice(Bj), ld), ld.image(Bj)))
      return {Status::Violated, ConditionWitness{j, *m}, Certificate::None, std::nullopt};
  }
  if (D.is_integer() && integer_invariance_condition(D, lambda))
    return {Status::CertifiedHolds, std::nullopt, Certificate::IntegerInvariance, std::nullopt};
  return {Status::HoldsUpTo, std::nullopt, Certificate::None, jmax};
}

namespace detail {

/// For integer A with B Lambda* ⊂ Lambda*: B^{J0+1} Z^n ∩ Lambda* ⊂ B Lambda*.
inline std::optional<bool> shifted_invariance(const Dilation &D, const Lattice &lambda, long J0) {
  if (!D.is_integer()) return std::nullopt;
  Lattice ld = dual(lambda);
  Lattice bl = ld.image(D.B());
  if (!is_sublattice(bl, ld)) return std::nullopt;
  return is_sublattice(intersect(Lattice(D.B_power(J0 + 1)), ld), bl);
}

}  // namespace detail

/// (sum_{|j|<=J} B^j Lambda*) ∩ Z^n ⊂ B^{-J0} Lambda*.
inline ConditionVerdict check_support_strong(const Dilation &D, const Lattice &lambda, long J0,
                                             long jmax) {
  if (J0 < 0) throw std::invalid_argument("J0 must be non-negative");
  if (J0 == 0) return check_strong(D, lambda, jmax);
  detail::require_dims(D, lambda);
  Lattice ld = detail::lambda_dual(lambda);
  Lattice target = ld.image(D.B_power(-J0));
  Lattice Zn = Lattice::integer(lambda.dim());
  Lattice G = ld;
  for (long J = 1; J <= jmax; ++J) {
    G = sum({G, ld.image(D.B_power(J)), ld.image(D.B_power(-J))});
    if (auto m = detail::first_outside(intersect(G, Zn), target))
      return {Status::Violated, ConditionWitness{J, *m}, Certificate::None, std::nullopt};
  }
  if (detail::shifted_invariance(D, lambda, J0).value_or(false))
    return {Status::CertifiedHolds, std::nullopt, Certificate::ShiftedInvariance, std::nullopt};
  return {Status::HoldsUpTo, std::nullopt, Certificate::None, jmax};
}

/// B^{J0+j} Z^n ∩ Lambda* ⊂ B^j Lambda* for |j| <= jmax.
inline ConditionVerdict check_support_weak(const Dilation &D, const Lattice &lambda, long J0,
                                           long jmax) {
  if (J0 < 0) throw std::invalid_argument("J0 must be non-negative");
  if (J0 == 0) return check_weak(D, lambda, jmax);
  detail::require_dims(D, lambda);
  Lattice ld = detail::lambda_dual(lambda);
  for (long j : detail::symmetric_order(jmax)) {
    Lattice lhs = intersect(Lattice(D.B_power(J0 + j)), ld);
    if (auto m = detail::first_outside(lhs, ld.image(D.B_power(j))))
      return {Status::Violated, ConditionWitness{j, *m}, Certificate::None, std::nullopt};
  }
  if (detail::shifted_invariance(D, lambda, J0).value_or(false))
    return {Status::CertifiedHolds, std::nullopt, Certificate::ShiftedInvariance, std::nullopt};
  return {Status::HoldsUpTo, std::nullopt, Certificate::None, jmax};
}

/// The six equivalent conditions for an integer dilation, (ii), (v), (vi) truncated at jmax.
struct EquivalenceReport {
  std::array<bool, 6> holds{};
  bool agree() const {
    for (bool b : holds)
      if (b != holds[0]) return false;
    return true;
  }
};

inline EquivalenceReport equivalence_battery(const Dilation &D, const Lattice &lambda, long jmax) {
  if (!D.is_integer()) throw Unsupported("equivalence_battery needs an integer dilation");
  detail::require_dims(D, lambda);
  const std::size_t n = lambda.dim();
  Lattice ld = detail::lambda_dual(lambda);
  Lattice Zn = Lattice::integer(n);
  EquivalenceReport r;
  r.holds[0] = integer_invariance_condition(D, lambda);

  bool ii = true;
  for (long j = 0; j <= jmax && ii; ++j) {
    RatMatrix Bj = D.B_power(j);
    ii = intersect(Lattice(Bj), ld) == ld.image(Bj);
  }
  r.holds[1] = ii;

  RatMatrix Ainv = inverse(D.A());
  r.holds[2] = is_sublattice(lambda.image(D.A()), lambda) && intersect(Lattice(Ainv), lambda) == Zn;

  Lattice bl = ld.image(D.B());
  bool iv = is_sublattice(bl, ld);
  if (iv) {
    Lattice bz(D.B());
    for (const auto &rep : exact_transversal(ld, bl)) {
      bool zero = std::all_of(rep.begin(), rep.end(), [](const Rational &x) { return x.is_zero(); });
      if (!zero && bz.member(rep)) {
        iv = false;
        break;
      }
    }
  }
  r.holds[3] = iv;
  r.holds[4] = check_weak(D, lambda, jmax).status != Status::Violated;
  r.holds[5] = check_strong(D, lambda, jmax).status != Status::Violated;
  return r;
}

struct ReducedPair {
  Dilation A;
  Lattice lambda;
};

/// Conjugates (A, Gamma, Lambda) to (P^{-1} A P, Z^n, P^{-1} Lambda) where Gamma = P Z^n.
inline ReducedPair reduce_general(const Dilation &D, const Lattice &gamma, const Lattice &lambda) {
  detail::require_dims(D, lambda);
  require_same_dim(gamma, lambda);
  if (!is_sublattice(gamma, lambda)) throw NotSublattice("Gamma is not contained in Lambda");
  const RatMatrix &P = gamma.basis();
  RatMatrix Pinv = inverse(P);
  return {Dilation(Pinv * D.A() * P), lambda.image(Pinv)};
}

/// (sum_{|j|<=J} B^j Lambda*) ∩ Gamma* ⊂ Lambda*, evaluated without reduction.
inline ConditionVerdict check_general_strong(const Dilation &D, const Lattice &gamma,
                                             const Lattice &lambda, long jmax) {
  detail::require_dims(D, lambda);
  if (!is_sublattice(gamma, lambda)) throw NotSublattice("Gamma is not contained in Lambda");
  Lattice ld = dual(lambda), gd = dual(gamma);
  Lattice G = ld;
  for (long J = 1; J <= jmax; ++J) {
    G = sum({G, ld.image(D.B_power(J)), ld.image(D.B_power(-J))});
    if (auto m = detail::first_outside(intersect(G, gd), ld))
      return {Status::Violated, ConditionWitness{J, *m}, Certificate::None, std::nullopt};
  }
  return {Status::HoldsUpTo, std::nullopt, Certificate::None, jmax};
}

}  // namespace ovs
