#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovs/builtins.hpp"
#include "ovs/json_io.hpp"

namespace ovs::cli {

inline constexpr int kExitInputError = 3;
inline constexpr int kExitInconclusive = 2;

struct Options {
  std::string out;
  bool pretty = false;
  std::string dilation = "2", lattice, gamma, gen, dual, f, region, k, x;
  long lambda = 0, jmax = 5, j0 = 0, p = 0, q = 0, alpha = 0, rmax = 8, r = 3, radius = 4;
  std::string js = "1,2,3", eps = "0.01";
  bool perturb = false;
  std::uint64_t seed = 0;
};

struct Report {
  io::Json json;
  int code = 0;
  std::string text;  // replaces the JSON output when set
};

namespace detail {

inline std::string read_input(const std::string &source, const std::string &flag) {
  if (source.empty()) throw SchemaError(flag + ": missing value");
  char c = source.front();
  if (c == '{' || c == '[' || c == '"') return source;
  std::ifstream in(source);
  if (!in) throw SchemaError(flag + ": cannot read '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F> auto with_flag(const std::string &flag, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError &e) {
    throw SchemaError(flag + " " + e.what());
  }
}

template <class Parse>
auto load(const std::string &source, const std::string &flag, Parse &&parse) {
  io::Json j = io::parse_text(read_input(source, flag), flag);
  return with_flag(flag, [&] { return parse(io::Node(j)); });
}

inline GeneratorSet load_generators(const std::string &source, const std::string &flag) {
  if (auto g = builtins::generator(source)) return *g;
  return load(source, flag, io::parse_generators);
}

inline RegionSet load_region(const std::string &source) {
  if (auto r = builtins::region(source)) return *r;
  return load(source, "--region", io::parse_region);
}

inline Dilation load_dilation(const std::string &source) {
  try {
    Rational a = Rational::parse(source);
    return with_flag("--dilation", [&] { return io::parse_dilation(io::Node(io::Json(a.str()))); });
  } catch (const SchemaError &e) {
    if (std::string(e.what()).rfind("--dilation", 0) == 0) throw;
  }
  return load(source, "--dilation", io::parse_dilation);
}

inline Lattice load_lattice(const Options &o, const std::string &source, std::size_t dim, const std::string &flag) {
  if (!source.empty()) {
    std::optional<Rational> r;
    try {
      r = Rational::parse(source);
    } catch (const SchemaError &) {
    }
    if (r) {
      if (r->is_zero()) throw SchemaError(flag + ": scale must be nonzero");
      return Lattice::scaled(dim, *r);
    }
    Lattice l = load(source, flag, io::parse_lattice);
    if (l.dim() != dim) throw DimError(flag + ": lattice dimension differs from the dilation");
    return l;
  }
  long lambda = o.lambda == 0 ? 1 : o.lambda;
  if (lambda < 1) throw SchemaError("--lambda: must be a positive integer");
  return inverse_scaled(dim, lambda);
}

inline Lattice target_lattice(const Options &o, std::size_t dim) {
  return load_lattice(o, o.lattice, dim, "--lattice");
}

inline long frame_lambda(const Options &o) {
  long lambda = o.lambda == 0 ? 1 : o.lambda;
  if (lambda < 1) throw SchemaError("--lambda: must be a positive integer");
  return lambda;
}

inline RatVec parse_vector(const std::string &s, const std::string &flag) {
  RatVec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    with_flag(flag, [&] { v.push_back(Rational::parse(item)); });
  if (v.empty()) throw SchemaError(flag + ": empty vector");
  return v;
}

template <class T> std::vector<T> parse_schedule(const std::string &s, const std::string &flag) {
  std::vector<T> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    T x{};
    try {
      if constexpr (std::is_same_v<T, long>)
        x = std::stol(item, &used);
      else
        x = std::stod(item, &used);
    } catch (const std::exception &) {
      used = std::string::npos;
    }
    if (used != item.size()) throw SchemaError(flag + ": invalid schedule entry '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw SchemaError(flag + ": empty schedule");
  return v;
}

inline Report verdict_report(const ConditionVerdict &v) { return {io::to_json(v), exit_code(v.status), {}}; }

inline Report frame_report(const FrameVerdict &v) { return {io::to_json(v), exit_code(v.status), {}}; }

}  // namespace detail

using Handler = std::function<Report(const Options &)>;

inline std::map<std::string, Handler> handlers() {
  using namespace detail;
  std::map<std::string, Handler> h;

  h["cond strong"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    return verdict_report(check_strong(D, target_lattice(o, D.dim()), o.jmax));
  };
  h["cond weak"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    return verdict_report(check_weak(D, target_lattice(o, D.dim()), o.jmax));
  };
  h["cond jstrong"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    return verdict_report(check_support_strong(D, target_lattice(o, D.dim()), o.j0, o.jmax));
  };
  h["cond jweak"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    return verdict_report(check_support_weak(D, target_lattice(o, D.dim()), o.j0, o.jmax));
  };
  h["cond prop36"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    EquivalenceReport r = equivalence_battery(D, target_lattice(o, D.dim()), o.jmax);
    return Report{io::to_json(r), r.agree() ? 0 : kExitInconclusive, {}};
  };
  h["cond cert1d"] = [](const Options &o) {
    if (o.lambda < 1) throw SchemaError("--lambda: must be a positive integer");
    bool ok;
    try {
      ok = certificate_1d(o.p, o.q, o.lambda);
    } catch (const BadDilation &e) {
      throw SchemaError(std::string("--p/--q: ") + e.what());
    }
    return Report{io::Json(ok), ok ? 0 : 1, ok ? "true" : "false"};
  };
  h["cond reduce"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    if (o.gamma.empty()) throw SchemaError("--gamma: missing value");
    Lattice gamma = load_lattice(o, o.gamma, D.dim(), "--gamma");
    ReducedPair rp = reduce_general(D, gamma, target_lattice(o, D.dim()));
    return Report{io::Json{{"dilation", io::dilation_json(rp.A)}, {"lattice", io::to_json(rp.lambda)}}, 0, {}};
  };

  h["frames parseval"] = [](const Options &o) {
    return frame_report(check_parseval(load_generators(o.gen, "--gen"), frame_lambda(o)));
  };
  h["frames dual"] = [](const Options &o) {
    return frame_report(
        check_dual(load_generators(o.gen, "--gen"), load_generators(o.dual, "--dual"), frame_lambda(o)));
  };
  h["frames talpha"] = [](const Options &o) {
    GeneratorSet psi = load_generators(o.gen, "--gen");
    GeneratorSet phi = o.dual.empty() ? psi : load_generators(o.dual, "--dual");
    BigInt alpha(o.alpha);
    return Report{io::to_json(t_alpha(psi, phi, frame_lambda(o), alpha), alpha), 0, {}};
  };
  h["frames functional"] = [](const Options &o) {
    StepFunction f = load(o.f, "--f", io::parse_step);
    return Report{io::to_json(frame_functional(f, load_generators(o.gen, "--gen"), frame_lambda(o))), 0, {}};
  };
  h["frames average"] = [](const Options &o) {
    StepFunction f = load(o.f, "--f", io::parse_step);
    AveragingOptions opts;
    opts.perturb = o.perturb;
    opts.seed = o.seed;
    auto rows = averaging_experiment(f, load_generators(o.gen, "--gen"), frame_lambda(o),
                                     parse_schedule<long>(o.js, "--js"), parse_schedule<double>(o.eps, "--eps"), opts);
    return Report{io::to_json(rows), 0, {}};
  };

  h["sigain overlap"] = [](const Options &o) {
    RegionSet K = load_region(o.region);
    RatVec k = parse_vector(o.k, "--k");
    return Report{io::Json{{"k", io::to_json(k)}, {"measure", overlap_measure(K, k).str()}}, 0, {}};
  };
  h["sigain gain"] = [](const Options &o) {
    RegionSet K = load_region(o.region);
    GainVerdict v = si_gain_check(K, target_lattice(o, K.dim()));
    return Report{io::to_json(v), exit_code(v.status), {}};
  };
  h["sigain class"] = [](const Options &o) {
    RegionSet K = load_region(o.region);
    return Report{io::to_json(behera_class(K, load_dilation(o.dilation), o.rmax)), 0, {}};
  };
  h["sigain crosscheck"] = [](const Options &o) {
    GeneratorSet g = load_generators(o.gen, "--gen");
    if (!g.a.is_integer()) throw Unsupported("crosscheck needs an integer dilation");
    CrosscheckReport rep = oversample_crosscheck(g, g.a.num().get_si(), o.r);
    return Report{io::to_json(rep), rep.agree() ? 0 : 1, {}};
  };

  h["approx constellation"] = [](const Options &o) {
    Dilation D = load_dilation(o.dilation);
    double eps = parse_schedule<double>(o.eps, "--eps").front();
    Constellation K = multiscale_constellation(D.A(), target_lattice(o, D.dim()), o.jmax, eps);
    return Report{io::to_json(K), 0, {}};
  };
  h["approx decompose"] = [](const Options &o) {
    if (o.lattice.empty()) throw SchemaError("--lattice: missing value");
    RatMatrix B = load(o.lattice, "--lattice", io::parse_lattice).basis();
    Rational eps = with_flag("--eps", [&] { return Rational::parse(o.eps); });
    RatVec x = parse_vector(o.x, "--x");
    if (x.size() != B.rows()) throw DimError("--x: dimension differs from the lattice");
    auto z = approx_dual_decompose(B.columns(), eps, x, o.radius);
    io::Json j{{"z", nullptr}};
    if (z) {
      io::Json a = io::Json::array();
      for (long c : *z) a.push_back(c);
      j["z"] = a;
    }
    return Report{j, z ? 0 : kExitInconclusive, {}};
  };

  h["show"] = [](const Options &o) {
    if (!o.gen.empty()) return Report{io::to_json(load_generators(o.gen, "--gen")), 0, {}};
    if (!o.region.empty()) return Report{io::to_json(load_region(o.region)), 0, {}};
    io::Json j{{"generators", builtins::generator_names()}, {"regions", builtins::region_names()}};
    return Report{j, 0, {}};
  };
  return h;
}

inline void build_app(CLI::App &app, Options &o) {
  app.require_subcommand(1);
  app.add_option("--out", o.out, "write the report to this file");
  app.add_flag("--pretty", o.pretty, "indent the JSON report");

  auto dil = [&](CLI::App *s) { s->add_option("--dilation", o.dilation, "rational a, matrix JSON or file")->capture_default_str(); };
  auto lat = [&](CLI::App *s) {
    s->add_option("--lattice", o.lattice, "lattice JSON (columns generate) or file, or a rational r for rZ");
    s->add_option("--lambda", o.lambda, "use (1/lambda)Z^n");
  };
  auto gen = [&](CLI::App *s) { return s->add_option("--gen", o.gen, "built-in generator name or generator JSON/file"); };

  CLI::App *cond = app.add_subcommand("cond", "oversampling conditions")->require_subcommand(1);
  for (const char *v : {"strong", "weak", "jstrong", "jweak", "prop36"}) {
    CLI::App *s = cond->add_subcommand(v);
    dil(s);
    lat(s);
    s->add_option("--jmax", o.jmax)->capture_default_str();
    if (std::string(v) == "jstrong" || std::string(v) == "jweak") s->add_option("--j0", o.j0)->required();
    if (std::string(v) == "prop36") s->alias("equivalences");
  }
  CLI::App *cert = cond->add_subcommand("cert1d", "gcd certificate for a = p/q");
  cert->add_option("--p", o.p)->required();
  cert->add_option("--q", o.q)->required();
  cert->add_option("--lambda", o.lambda)->required();
  CLI::App *red = cond->add_subcommand("reduce", "conjugate Gamma to Z^n");
  dil(red);
  lat(red);
  red->add_option("--gamma", o.gamma, "lattice JSON or file");

  CLI::App *frames = app.add_subcommand("frames", "exact 1-D frame equations")->require_subcommand(1);
  for (const char *v : {"parseval", "dual", "talpha", "functional", "average"}) {
    CLI::App *s = frames->add_subcommand(v);
    gen(s)->required();
    s->add_option("--lambda", o.lambda, "oversampling factor")->default_val(1);
    std::string n = v;
    if (n == "dual") s->add_option("--dual", o.dual)->required();
    if (n == "talpha") {
      s->add_option("--dual", o.dual);
      s->add_option("--alpha", o.alpha)->default_val(0);
    }
    if (n == "functional" || n == "average") s->add_option("--f", o.f, "step function JSON or file")->required();
    if (n == "average") {
      s->add_option("--js", o.js, "comma-separated J schedule")->capture_default_str();
      s->add_option("--eps", o.eps, "comma-separated eps schedule")->capture_default_str();
      s->add_flag("--perturb", o.perturb);
      s->add_option("--seed", o.seed);
    }
  }

  CLI::App *sig = app.add_subcommand("sigain", "shift-invariance gain")->require_subcommand(1);
  for (const char *v : {"overlap", "gain", "class"}) {
    CLI::App *s = sig->add_subcommand(v);
    s->add_option("--region", o.region, "built-in region name or region JSON/file")->required();
    std::string n = v;
    if (n == "overlap") s->add_option("--k", o.k, "comma-separated shift")->required();
    if (n == "gain") lat(s);
    if (n == "class") {
      dil(s);
      s->add_option("--rmax", o.rmax)->capture_default_str();
    }
  }
  CLI::App *cc = sig->add_subcommand("crosscheck");
  gen(cc)->required();
  cc->add_option("--r", o.r)->capture_default_str();

  CLI::App *ap = app.add_subcommand("approx", "approximate transversals")->require_subcommand(1);
  CLI::App *con = ap->add_subcommand("constellation");
  dil(con);
  lat(con);
  con->add_option("--jmax", o.jmax, "scales |j| <= jmax")->capture_default_str();
  con->add_option("--eps", o.eps)->capture_default_str();
  CLI::App *dec = ap->add_subcommand("decompose");
  dec->add_option("--lattice", o.lattice)->required();
  dec->add_option("--eps", o.eps, "rational tolerance")->capture_default_str();
  dec->add_option("--x", o.x, "comma-separated point")->required();
  dec->add_option("--radius", o.radius)->capture_default_str();

  CLI::App *show = app.add_subcommand("show", "print built-ins");
  show->add_option("--gen", o.gen);
  show->add_option("--region", o.region);
}

inline std::string command_path(const CLI::App &app) {
  std::string path;
  const CLI::App *cur = &app;
  for (;;) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    path += (path.empty() ? "" : " ") + cur->get_name();
  }
  return path;
}

/// Runs one command; args exclude the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Oversampling and frame verification toolkit", "ovs"};
  Options o;
  build_app(app, o);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  Report rep;
  try {
    auto h = handlers();
    auto it = h.find(command_path(app));
    if (it == h.end()) throw SchemaError("unknown command '" + command_path(app) + "'");
    rep = it->second(o);
  } catch (const Unsupported &e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const HypothesisUnverifiable &e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception &e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::string text = rep.text.empty() ? (o.pretty ? rep.json.dump(2) : rep.json.dump()) : rep.text;
  if (o.out.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(o.out);
    if (!(f << text << "\n")) {
      err << "input error: cannot write '" << o.out << "'\n";
      return kExitInputError;
    }
  }
  return rep.code;
}

}  // namespace ovs::cli
