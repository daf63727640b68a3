#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ovs/approx.hpp"
#include "ovs/conditions.hpp"
#include "ovs/frames.hpp"
#include "ovs/sigain.hpp"

namespace ovs::io {

using Json = nlohmann::ordered_json;

/// JSON value together with its location, for path-qualified schema errors.
class Node {
public:
  Node(const Json &j, std::string path = "$") : j_(&j), path_(std::move(path)) {}

  const Json &json() const { return *j_; }
  const std::string &path() const { return path_; }

  [[noreturn]] void fail(const std::string &msg) const { throw SchemaError(path_ + ": " + msg); }

  bool has(const std::string &key) const { return j_->is_object() && j_->contains(key); }

  Node operator[](const std::string &key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing field '" + key + "'");
    return Node(*it, path_ + "." + key);
  }

  Node operator[](std::size_t i) const { return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  long integer() const {
    if (j_->is_number_integer()) return j_->get<long>();
    if (j_->is_string()) {
      Rational r = rational();
      if (r.is_integer() && r.num().fits_slong_p()) return r.num().get_si();
    }
    fail("expected an integer");
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected a boolean");
    return j_->get<bool>();
  }

  Rational rational() const {
    if (j_->is_number_integer()) return Rational(j_->get<long>());
    if (!j_->is_string()) fail("expected a rational string \"p/q\"");
    try {
      return Rational::parse(j_->get<std::string>());
    } catch (const Error &e) {
      fail(e.what());
    }
  }

  /// Runs f, re-raising library errors as schema errors at this node.
  template <class F> auto guard(F &&f) const -> decltype(f()) {
    try {
      return f();
    } catch (const SchemaError &e) {
      std::string m = e.what();
      if (m.rfind("$", 0) == 0) throw;
      fail(m);
    } catch (const RadicandMismatch &e) {
      fail(e.what());
    } catch (const RankError &e) {
      fail(e.what());
    } catch (const DimError &e) {
      fail(e.what());
    }
  }

private:
  const Json *j_;
  std::string path_;
};

inline Json parse_text(const std::string &text, const std::string &source = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(source + ": invalid JSON: " + e.what());
  }
}

// ---- scalars ------------------------------------------------------------------------------

inline Json to_json(const Rational &r) { return r.str(); }

inline Json to_json(const BigInt &b) { return b.get_str(); }

inline Json to_json(const RatVec &v) {
  Json a = Json::array();
  for (const auto &x : v) a.push_back(x.str());
  return a;
}

inline Json to_json(const IntVec &v) {
  Json a = Json::array();
  for (const auto &x : v) a.push_back(x.get_str());
  return a;
}

inline RatVec parse_ratvec(const Node &n) {
  RatVec v;
  for (std::size_t i = 0; i < n.size(); ++i) v.push_back(n[i].rational());
  return v;
}

inline Json to_json(const QuadScalar &q) { return Json{{"a", q.a().str()}, {"b", q.b().str()}}; }

inline QuadScalar parse_quad(const Node &n, long radicand) {
  if (!n.json().is_object()) return QuadScalar(n.rational());
  Rational a = n["a"].rational();
  Rational b = n.has("b") ? n["b"].rational() : Rational(0);
  return n.guard([&] { return QuadScalar(a, b, radicand); });
}

inline Json to_json(const ComplexQuad &z) { return Json{{"re", to_json(z.re())}, {"im", to_json(z.im())}}; }

inline ComplexQuad parse_complex(const Node &n, long radicand) {
  if (n.json().is_object() && n.has("re")) {
    QuadScalar re = parse_quad(n["re"], radicand);
    QuadScalar im = n.has("im") ? parse_quad(n["im"], radicand) : QuadScalar(0);
    return ComplexQuad(re, im);
  }
  return ComplexQuad(parse_quad(n, radicand));
}

inline Json to_json(const RatMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline RatMatrix parse_matrix(const Node &n) {
  std::size_t r = n.size();
  if (r == 0) n.fail("matrix must have at least one row");
  std::size_t c = n[0].size();
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    Node row = n[i];
    if (row.size() != c) row.fail("ragged matrix row");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = row[j].rational();
  }
  return m;
}

// ---- lattices and dilations ---------------------------------------------------------------

/// {"dim": n, "basis": [generator, ...]}, each generator a column of the canonical basis.
inline Json to_json(const Lattice &l) {
  Json cols = Json::array();
  for (const auto &c : l.basis().columns()) cols.push_back(to_json(c));
  return Json{{"dim", l.dim()}, {"basis", cols}};
}

inline RatMatrix parse_columns(const Node &n) {
  std::size_t k = n.size();
  if (k == 0) n.fail("need at least one generator");
  std::size_t dim = n[0].size();
  if (dim == 0) n[0].fail("generator of dimension 0");
  RatMatrix m(dim, k);
  for (std::size_t j = 0; j < k; ++j) {
    Node c = n[j];
    if (c.size() != dim) c.fail("generator dimension differs from the first generator");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = c[i].rational();
  }
  return m;
}

inline Lattice parse_lattice(const Node &n) {
  if (n.json().is_string() || n.json().is_number_integer())
    return n.guard([&] { return Lattice::scaled(1, n.rational()); });
  Node b = n["basis"];
  RatMatrix m = parse_columns(b);
  if (n.has("dim") && n["dim"].integer() != static_cast<long>(m.rows())) n["dim"].fail("dim does not match basis");
  return b.guard([&] { return Lattice(m); });
}

// ---- constellations ---------------------------------------------------------------------

inline Json to_json(const Point &p) {
  if (p.exact) return to_json(*p.exact);
  Json a = Json::array();
  for (double x : p.x) a.push_back(x);
  return a;
}

inline Point parse_point(const Node &n, std::size_t dim) {
  if (n.size() != dim) n.fail("point dimension differs from dim");
  bool exact = true;
  for (std::size_t i = 0; i < dim; ++i) exact = exact && !n[i].json().is_number_float();
  if (exact) return Point::from_exact(parse_ratvec(n));
  Point p;
  for (std::size_t i = 0; i < dim; ++i) p.x.push_back(n[i].number());
  return p;
}

/// Factorized form; "points" lists the materialized sums when they are few enough.
inline Json to_json(const Constellation &K, std::size_t max_points = 4096) {
  Json pairs = Json::array(), factors = Json::array();
  for (const auto &[lam, gam] : K.pairs) pairs.push_back(Json{{"lambda", to_json(lam)}, {"gamma", to_json(gam)}});
  for (const auto &f : K.factors) {
    Json pts = Json::array();
    for (const auto &p : f) pts.push_back(to_json(p));
    factors.push_back(pts);
  }
  Json j{{"dim", K.dim}, {"epsilon", K.epsilon}, {"size", K.size().get_str()}, {"pairs", pairs}, {"factors", factors}};
  if (K.size() <= max_points) {
    Json pts = Json::array();
    for (const auto &p : K.points()) pts.push_back(to_json(p));
    j["points"] = pts;
  }
  return j;
}

inline Constellation parse_constellation(const Node &n) {
  Constellation K;
  long dim = n["dim"].integer();
  if (dim < 1) n["dim"].fail("dimension must be positive");
  K.dim = static_cast<std::size_t>(dim);
  K.epsilon = n["epsilon"].number();
  Node pairs = n["pairs"], factors = n["factors"];
  if (pairs.size() != factors.size()) factors.fail("one factor per lattice pair expected");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Lattice lam = parse_lattice(pairs[i]["lambda"]), gam = parse_lattice(pairs[i]["gamma"]);
    if (lam.dim() != K.dim || gam.dim() != K.dim) pairs[i].fail("lattice dimension differs from dim");
    K.pairs.emplace_back(lam, gam);
    std::vector<Point> f;
    for (std::size_t k = 0; k < factors[i].size(); ++k) f.push_back(parse_point(factors[i][k], K.dim));
    K.factors.push_back(std::move(f));
  }
  return K;
}

inline Json dilation_json(const Dilation &d) {
  if (d.dim() == 1) return d.A()(0, 0).str();
  return Json{{"matrix", to_json(d.A())}};
}

inline Dilation parse_dilation(const Node &n) {
  auto make = [&](const RatMatrix &m) {
    try {
      return n.guard([&] { return Dilation(m); });
    } catch (const BadDilation &e) {
      n.fail(e.what());
    }
  };
  if (n.json().is_string() || n.json().is_number_integer()) return make(RatMatrix{{n.rational()}});
  if (n.json().is_array()) return make(parse_matrix(n));
  return make(parse_matrix(n["matrix"]));
}

// ---- verdicts -----------------------------------------------------------------------------

inline Json to_json(const ConditionVerdict &v) {
  Json j{{"status", to_string(v.status)}};
  j["witness"] = v.witness ? Json{{"scale", v.witness->scale}, {"m", to_json(v.witness->m)}} : Json(nullptr);
  j["certificate"] = v.certificate == Certificate::None ? Json(nullptr) : Json(to_string(v.certificate));
  j["bound"] = v.status == Status::HoldsUpTo && v.bound ? Json(*v.bound) : Json(nullptr);
  return j;
}

inline Certificate parse_certificate(const Node &n) {
  if (n.json().is_null()) return Certificate::None;
  std::string s = n.string();
  for (auto c : {Certificate::None, Certificate::IntegerInvariance, Certificate::Gcd1D, Certificate::ShiftedInvariance})
    if (to_string(c) == s) return c;
  n.fail("unknown certificate '" + s + "'");
}

inline Status parse_status_node(const Node &n) {
  return n.guard([&] { return parse_status(n.string()); });
}

inline ConditionVerdict parse_condition_verdict(const Node &n) {
  ConditionVerdict v;
  v.status = parse_status_node(n["status"]);
  if (n.has("witness") && !n["witness"].json().is_null())
    v.witness = ConditionWitness{n["witness"]["scale"].integer(), parse_ratvec(n["witness"]["m"])};
  if (n.has("certificate")) v.certificate = parse_certificate(n["certificate"]);
  if (n.has("bound") && !n["bound"].json().is_null()) v.bound = n["bound"].integer();
  return v;
}

inline Json to_json(const EquivalenceReport &r) {
  Json a = Json::array();
  for (bool b : r.holds) a.push_back(b);
  return Json{{"holds", a}, {"agree", r.agree()}};
}

// ---- step functions and generators ---------------------------------------------------------

inline Json to_json(const StepFunction &f) {
  Json b = Json::array(), v = Json::array();
  for (const auto &x : f.breakpoints()) b.push_back(x.str());
  for (const auto &x : f.values()) v.push_back(to_json(x));
  return Json{{"breakpoints", b}, {"values", v}, {"radicand", f.radicand()}};
}

inline StepFunction parse_step(const Node &n) {
  n.require_object();
  long d = n.has("radicand") ? n["radicand"].integer() : 2;
  if (!QuadScalar::square_free(d)) n["radicand"].fail("radicand must be square-free and >= 2");
  Node bn = n["breakpoints"], vn = n["values"];
  std::vector<Rational> b;
  std::vector<ComplexQuad> v;
  for (std::size_t i = 0; i < bn.size(); ++i) b.push_back(bn[i].rational());
  for (std::size_t i = 0; i < vn.size(); ++i) v.push_back(parse_complex(vn[i], d));
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (!(b[i] < b[i + 1])) bn[i + 1].fail("breakpoints must be strictly increasing");
  if (!b.empty() || !v.empty())
    if (b.size() != v.size() + 1) vn.fail("expected one value fewer than breakpoints");
  return n.guard([&] { return StepFunction(b, v); });
}

inline Json to_json(const GeneratorSet &g) {
  Json gens = Json::array();
  for (const auto &f : g.psi) gens.push_back(to_json(f));
  return Json{{"dilation", g.a.str()}, {"generators", gens}, {"semi_orthogonal", g.semi_orthogonal}};
}

inline GeneratorSet parse_generators(const Node &n) {
  n.require_object();
  Node dn = n["dilation"];
  Rational a = dn.rational();
  if (!(a > Rational(1))) dn.fail("dilation must be a rational number > 1");
  GeneratorSet g;
  g.a = a;
  if (n.has("generators")) {
    Node gs = n["generators"];
    for (std::size_t i = 0; i < gs.size(); ++i) g.psi.push_back(parse_step(gs[i]));
  } else {
    g.psi.push_back(parse_step(n["generator"]));
  }
  if (n.has("semi_orthogonal")) g.semi_orthogonal = n["semi_orthogonal"].boolean();
  return g;
}

inline Json to_json(const FrameVerdict &v) {
  Json j{{"status", to_string(v.status)}};
  if (v.witness)
    j["witness"] = Json{{"alpha", v.witness->alpha.get_si()},
                        {"interval", Json::array({v.witness->lo.str(), v.witness->hi.str()})},
                        {"value", to_json(v.witness->value)}};
  return j;
}

inline FrameVerdict parse_frame_verdict(const Node &n) {
  FrameVerdict v;
  v.status = parse_status_node(n["status"]);
  if (n.has("witness") && !n["witness"].json().is_null()) {
    Node w = n["witness"];
    Node iv = w["interval"];
    if (iv.size() != 2) iv.fail("interval needs two endpoints");
    v.witness = FrameWitness{BigInt(w["alpha"].integer()), iv[0].rational(), iv[1].rational(),
                             parse_complex(w["value"], 2)};
  }
  return v;
}

inline Json to_json(const TAlpha &t, const BigInt &alpha) {
  return Json{{"alpha", alpha.get_si()}, {"periodic", t.periodic}, {"values", to_json(t.values)}};
}

inline Json to_json(const FunctionalReport &r) {
  Json table = Json::array();
  for (const auto &e : r.table)
    table.push_back(Json{{"l", e.l}, {"j", e.j}, {"m", e.m.get_str()}, {"c", to_json(e.c)}});
  return Json{{"N", to_json(r.N)},
              {"norm2", to_json(r.norm2)},
              {"equal", r.N == r.norm2},
              {"ranges", Json{{"j_min", r.j_min}, {"j_max", r.j_max}, {"m_max", r.m_max.get_str()}}},
              {"coefficients", table}};
}

inline Json to_json(const std::vector<AveragingRow> &rows) {
  Json a = Json::array();
  for (const auto &r : rows)
    a.push_back(Json{{"J", r.J},
                     {"eps", r.eps},
                     {"size", r.size.get_str()},
                     {"average", r.average},
                     {"target", r.target},
                     {"error", r.error},
                     {"bound", r.bound}});
  return Json{{"rows", a}};
}

// ---- regions ------------------------------------------------------------------------------

inline Json to_json(const RegionSet &K) {
  Json boxes = Json::array();
  for (const auto &b : K.boxes()) boxes.push_back(Json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}});
  return Json{{"dim", K.dim()}, {"boxes", boxes}};
}

inline RegionSet parse_region(const Node &n) {
  n.require_object();
  long dim = n["dim"].integer();
  if (dim < 1) n["dim"].fail("dimension must be positive");
  Node bs = n["boxes"];
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    Box b{parse_ratvec(bs[i]["lo"]), parse_ratvec(bs[i]["hi"])};
    if (b.lo.size() != static_cast<std::size_t>(dim)) bs[i]["lo"].fail("corner dimension differs from dim");
    if (b.hi.size() != static_cast<std::size_t>(dim)) bs[i]["hi"].fail("corner dimension differs from dim");
    boxes.push_back(std::move(b));
  }
  return RegionSet(static_cast<std::size_t>(dim), std::move(boxes));
}

inline Json to_json(const GainVerdict &v) {
  Json j{{"status", to_string(v.status)}};
  j["witness"] = v.witness ? Json{{"k", to_json(v.witness->k)}, {"measure", v.witness->measure.str()}} : Json(nullptr);
  return j;
}

inline Json to_json(const ClassResult &c) {
  return c.infinite ? Json{{"class", "inf"}} : Json{{"class", c.r}};
}

inline ClassResult parse_class(const Node &n) {
  Node c = n["class"];
  if (c.json().is_string() && c.string() == "inf") return {true, 0};
  long r = c.integer();
  if (r < 0) c.fail("class must be non-negative");
  return {false, r};
}

inline Json to_json(const CrosscheckReport &r) {
  Json rows = Json::array();
  for (const auto &x : r.rows)
    rows.push_back(Json{{"s", x.s},
                        {"parseval", to_string(x.parseval)},
                        {"cumulative", x.cumulative},
                        {"class_at_least", x.class_at_least},
                        {"agree", x.agree}});
  Json j = to_json(r.klass);
  j["rows"] = rows;
  j["agree"] = r.agree();
  return j;
}

inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace ovs::io
