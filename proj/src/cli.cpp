#include "qpeano/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "qpeano/interp.hpp"
#include "qpeano/json_io.hpp"
#include "qpeano/peano.hpp"
#include "qpeano/qarith.hpp"
#include "qpeano/qcalc.hpp"
#include "qpeano/qspline.hpp"
#include "qpeano/qtaylor.hpp"
#include "qpeano/quad.hpp"

namespace qpeano::cli {

namespace {

struct Record {
  Json inputs = Json::object();
  Json result;
  std::string row_key;             // "t" or "x" when rows are present
  std::vector<std::pair<double, double>> rows;
  Json metadata = Json::object();
};

struct Options {
  std::string format = "json";
  std::optional<double> rel_tol;
  std::optional<int> max_terms;

  // shared operands
  int n = 0;
  std::optional<int> n_opt;
  double q = 2.0;
  double a = 0.0, b = 1.0, t = 0.0, x = 0.0;
  std::optional<double> a_opt, b_opt;
  int order = 1, m = -1, grid = 257, k = 0;
  std::string f, functional, rule;
  std::vector<double> nodes;
};

std::string read_source(const std::string& spec, std::istream& in) {
  if (spec != "-") return spec;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

IntegralConfig make_config(const Options& o) {
  IntegralConfig cfg;
  if (const char* path = std::getenv(kConfigEnv); path && *path) {
    std::ifstream file(path);
    if (!file) throw InputError(std::string("cannot read config file ") + path);
    const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    const Json j = parse_json(text);
    if (!j.is_object()) throw InputError("config file must hold a JSON object");
    if (j.contains("rel_tol")) {
      if (!j["rel_tol"].is_number()) throw InputError("config rel_tol must be a number");
      cfg.rel_tol = j["rel_tol"].get<double>();
    }
    if (j.contains("max_terms")) {
      if (!j["max_terms"].is_number_integer()) throw InputError("config max_terms must be an integer");
      cfg.max_terms = j["max_terms"].get<int>();
    }
  }
  if (o.rel_tol) cfg.rel_tol = *o.rel_tol;
  if (o.max_terms) cfg.max_terms = *o.max_terms;
  cfg.validate();
  return cfg;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) throw DomainError("grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] =
        i == count - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return g;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void emit_csv(std::ostream& out, const Record& r) {
  if (!r.rows.empty()) {
    out << r.row_key << ",value\n";
    for (const auto& [t, v] : r.rows) out << format_number(t) << ',' << format_number(v) << '\n';
    return;
  }
  out << "key,value\n";
  const auto scalar = [&](const std::string& key, const Json& v) {
    if (v.is_number_float()) {
      out << key << ',' << format_number(v.get<double>()) << '\n';
    } else if (v.is_null()) {
      out << key << ",\n";
    } else {
      out << key << ',' << v.dump() << '\n';
    }
  };
  const std::function<void(const std::string&, const Json&)> walk = [&](const std::string& key,
                                                                          const Json& v) {
    if (v.is_object()) {
      for (auto it = v.begin(); it != v.end(); ++it) walk(key.empty() ? it.key() : key + "." + it.key(), it.value());
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) walk(key + "[" + std::to_string(i) + "]", v[i]);
    } else {
      scalar(key, v);
    }
  };
  walk(r.result.is_object() ? "" : "result", r.result);
}

void emit(std::ostream& out, const std::string& command, const Record& r, const Options& o) {
  if (o.format == "csv") {
    emit_csv(out, r);
    return;
  }
  Json j = {{"command", command}, {"inputs", r.inputs}, {"result", r.result}};
  if (!r.rows.empty()) {
    Json rows = Json::array();
    for (const auto& [t, v] : r.rows) rows.push_back({{r.row_key, t}, {"value", v}});
    j["rows"] = rows;
  }
  j["metadata"] = r.metadata;
  write_json(out, j);
}

void emit_error(std::ostream& out, const std::string& kind, const std::string& message) {
  write_json(out, {{"error", {{"kind", kind}, {"message", message}}}});
}

Json config_json(const IntegralConfig& cfg) {
  return {{"rel_tol", cfg.rel_tol}, {"max_terms", cfg.max_terms}};
}

using Handler = std::function<Record(Options&, std::istream&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"q-Peano kernel toolkit: q-integrals, kernels, quadrature and q-B-splines"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::pair<std::string, Handler>> handlers;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--rel-tol", o.rel_tol, "series truncation tolerance");
    sub->add_option("--max-terms", o.max_terms, "series term cap");
  };
  const auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[sub] = {name, std::move(h)};
    return sub;
  };

  // --------------------------------------------------------------- arithmetic
  auto* qint = add("qint", "q-integer [n]_q", [](Options& o, std::istream&) {
    Record r;
    r.inputs = {{"n", o.n}, {"q", o.q}};
    r.result = q_int(o.n, QParam(o.q));
    r.metadata = {{"q", o.q}};
    return r;
  });
  qint->add_option("--n", o.n)->required();
  qint->add_option("--q", o.q)->required();

  auto* qfact = add("qfact", "q-factorial [n]_q!", [](Options& o, std::istream&) {
    Record r;
    r.inputs = {{"n", o.n}, {"q", o.q}};
    r.result = q_factorial(o.n, QParam(o.q));
    r.metadata = {{"q", o.q}};
    return r;
  });
  qfact->add_option("--n", o.n)->required();
  qfact->add_option("--q", o.q)->required();

  auto* qdiff = add("qdiff", "q-derivative D_q^order f(t), q being the base", [](Options& o, std::istream& in) {
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"t", o.t}, {"q", o.q}, {"order", o.order}};
    r.result = q_derivative_n(f, o.t, o.order, QParam(o.q));
    r.metadata = {{"q", o.q}};
    return r;
  });
  qdiff->add_option("--f", o.f, "FunctionSpec JSON or - for stdin")->required();
  qdiff->add_option("--t", o.t)->required();
  qdiff->add_option("--q", o.q)->required();
  qdiff->add_option("--order", o.order);

  auto* qintdef = add("qint-def", "Jackson integral over [a,b]; q > 1 means d_{1/q}", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    if (o.q == 1.0) throw DomainError("qint-def: q must differ from 1");
    const QParam base = o.q > 1.0 ? QParam(o.q).inverse() : QParam(o.q);
    const IntegralResult res = jackson_integral_ab(f, o.a, o.b, base, cfg);
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"a", o.a}, {"b", o.b}, {"q", o.q}};
    r.result = {{"value", res.value}, {"terms", res.terms}, {"converged", res.converged}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    r.metadata["series_base"] = base.value();
    return r;
  });
  qintdef->add_option("--f", o.f)->required();
  qintdef->add_option("--a", o.a);
  qintdef->add_option("--b", o.b)->required();
  qintdef->add_option("--q", o.q)->required();

  // ------------------------------------------------------------------- Taylor
  auto* taylor = add("taylor", "q-Taylor expansion and remainder", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const QParam q(o.q);
    const QTaylorExpansion e = q_taylor_expand(f, o.a, o.n, q);
    const IntegralResult tr = q_taylor_remainder(f, o.a, o.x, o.n, q, cfg, RemainderForm::Truncated);
    const IntegralResult un = q_taylor_remainder(f, o.a, o.x, o.n, q, cfg, RemainderForm::Untruncated);
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"a", o.a}, {"x", o.x}, {"n", o.n}, {"q", o.q}};
    r.result = {{"f_x", f(o.x)},
                {"expansion", e(o.x)},
                {"remainder_truncated", tr.value},
                {"remainder_untruncated", un.value},
                {"coefficients", e.coefficients()}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    r.metadata["terms"] = tr.terms + un.terms;
    return r;
  });
  taylor->add_option("--f", o.f)->required();
  taylor->add_option("--a", o.a)->required();
  taylor->add_option("--x", o.x)->required();
  taylor->add_option("--n", o.n)->required();
  taylor->add_option("--q", o.q)->required();

  // -------------------------------------------------------------------- Peano
  const auto kernel_degree = [](const Options& o, const LinearFunctional& L) {
    if (o.n_opt) return *o.n_opt;
    const int d = annihilation_degree(L, 16);
    if (d < 0) throw DomainError("functional does not annihilate constants");
    return d;
  };

  auto* kernel = add("kernel", "Peano kernel of a functional on a grid", [kernel_degree](Options& o, std::istream& in) {
    const LinearFunctional L = functional_from_json(parse_json(read_source(o.functional, in)));
    const int n = kernel_degree(o, L);
    const PeanoKernel K(L, n);
    Record r;
    r.inputs = {{"functional", functional_to_json(L)}, {"n", n}, {"grid", o.grid}};
    r.result = {{"degree", n}, {"annihilation_degree", annihilation_degree(L, 16)}};
    r.row_key = "t";
    for (double t : uniform_grid(L.a(), L.b(), o.grid)) r.rows.emplace_back(t, kernel_value(K, t));
    r.metadata = {{"q", L.q().value()}};
    return r;
  });
  kernel->add_option("--functional", o.functional, "LinearFunctional JSON or -")->required();
  kernel->add_option("--n", o.n_opt, "kernel degree (default: annihilation degree)");
  kernel->add_option("--grid", o.grid);

  auto* recon = add("reconstruct", "L(f) directly and through the kernel", [kernel_degree](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    if (o.functional == "-" && o.f == "-") throw InputError("only one input may come from stdin");
    const LinearFunctional L = functional_from_json(parse_json(read_source(o.functional, in)));
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const int n = kernel_degree(o, L);
    const PeanoKernel K(L, n);
    const IntegralResult rec = reconstruct(K, f, cfg);
    Json mv = nullptr;
    try {
      if (const auto form = mean_value_form(K, f, cfg)) mv = {{"xi", form->xi}, {"value", form->value}};
    } catch (const DomainError&) {
      // kernel changes sign: the mean-value form does not apply
    }
    Record r;
    r.inputs = {{"functional", functional_to_json(L)}, {"f", function_to_json(f)}, {"n", n}};
    r.result = {{"apply", apply(L, f, cfg)}, {"reconstruct", rec.value}, {"mean_value", mv}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = L.q().value();
    r.metadata["terms"] = rec.terms;
    r.metadata["converged"] = rec.converged;
    return r;
  });
  recon->add_option("--functional", o.functional)->required();
  recon->add_option("--f", o.f)->required();
  recon->add_option("--n", o.n_opt);

  // ------------------------------------------------------------ interpolation
  auto* ierr = add("interp-error", "interpolation error, direct and q-Kowalewski", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const KnotVector nodes(o.nodes);
    const int m = o.m >= 0 ? o.m : static_cast<int>(nodes.size()) - 1;
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"nodes", o.nodes}, {"x", o.x}, {"m", m}, {"q", o.q}};
    r.result = {{"direct", interp_error_direct(f, nodes, o.x)},
                {"kowalewski", kowalewski_remainder(f, nodes, o.x, m, QParam(o.q), cfg)}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    return r;
  });
  ierr->add_option("--f", o.f)->required();
  ierr->add_option("--nodes", o.nodes)->required()->delimiter(',');
  ierr->add_option("--x", o.x)->required();
  ierr->add_option("--q", o.q)->required();
  ierr->add_option("--m", o.m, "derivative order (default n)");

  // --------------------------------------------------------------- quadrature
  auto* trapz = add("trapz", "q-trapezoidal rule and its error", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const QParam q(o.q);
    const TrapezoidError e = trapezoid_error(f, o.a, o.b, q, cfg);
    const double rule = q_trapezoid(f, o.a, o.b, q);
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"a", o.a}, {"b", o.b}, {"q", o.q}};
    r.result = {{"rule", rule},
                {"integral", rule + e.actual},
                {"error", e.actual},
                {"constant", trapezoid_error_constant(o.a, o.b, q)},
                {"mean_value_bound", optional_json(e.mean_value_bound)},
                {"xi", optional_json(e.xi)}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    return r;
  });
  trapz->add_option("--f", o.f)->required();
  trapz->add_option("--a", o.a)->required();
  trapz->add_option("--b", o.b)->required();
  trapz->add_option("--q", o.q)->required();

  auto* qbound = add("quad-bound", "quadrature remainder and Hoelder bounds", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    if (o.rule == "-" && o.f == "-") throw InputError("only one input may come from stdin");
    const QuadratureRule rule = rule_from_json(parse_json(read_source(o.rule, in)));
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const double integral = jackson_integral_0b(f, rule.b(), rule.q().inverse(), cfg).value;
    Record r;
    r.inputs = {{"rule", rule_to_json(rule)}, {"f", function_to_json(f)}};
    r.result = {{"remainder", integral - rule.apply(f)},
                {"bound_inf", remainder_bound(rule, f, HolderExponent::Infinity, cfg)},
                {"bound_2", remainder_bound(rule, f, HolderExponent::Two, cfg)}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = rule.q().value();
    return r;
  });
  qbound->add_option("--rule", o.rule, "QuadratureRule JSON or -")->required();
  qbound->add_option("--f", o.f)->required();

  auto* qopt = add("quad-optimize", "weights minimising the kernel L2 norm", [](Options& o, std::istream&) {
    const IntegralConfig cfg = make_config(o);
    const KnotVector nodes(o.nodes);
    const QParam q(o.q);
    const auto w = optimize_weights_l2(nodes, o.m, o.b, q, cfg);
    const QuadratureRule rule(nodes, w, o.b, q, o.m);
    Record r;
    r.inputs = {{"nodes", o.nodes}, {"m", o.m}, {"b", o.b}, {"q", o.q}};
    r.result = {{"weights", w}, {"objective", kernel_l2_objective(rule)}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    return r;
  });
  qopt->add_option("--nodes", o.nodes)->required()->delimiter(',');
  qopt->add_option("--m", o.m)->required();
  qopt->add_option("--b", o.b)->required();
  qopt->add_option("--q", o.q)->required();

  // ------------------------------------------------------------------ splines
  auto* bspl = add("bspline", "q-B-spline N_{k,n} on a grid over its support", [](Options& o, std::istream&) {
    const KnotVector knots(o.nodes);
    const QParam q(o.q);
    const auto last = static_cast<std::size_t>(o.k) + static_cast<std::size_t>(o.n) + 1;
    if (o.k < 0 || o.n < 0 || last >= knots.size()) throw DomainError("bspline: not enough knots");
    Record r;
    r.inputs = {{"degree", o.n}, {"k", o.k}, {"knots", o.nodes}, {"q", o.q}, {"grid", o.grid}};
    r.row_key = "t";
    for (double t : uniform_grid(knots[static_cast<std::size_t>(o.k)], knots[last], o.grid)) {
      r.rows.emplace_back(t, q_bspline(static_cast<std::size_t>(o.k), o.n, knots, t, q));
    }
    r.result = {{"rows", o.grid}};
    r.metadata = {{"q", o.q}};
    return r;
  });
  bspl->add_option("--degree", o.n)->required();
  bspl->add_option("--knots", o.nodes)->required()->delimiter(',');
  bspl->add_option("--q", o.q)->required();
  bspl->add_option("--grid", o.grid);
  bspl->add_option("--k", o.k);

  auto* dd = add("divdiff", "divided difference f[t_0,...,t_N]", [](Options& o, std::istream& in) {
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const KnotVector knots(o.nodes);
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"knots", o.nodes}};
    r.result = {{"recursive", divided_difference(f, knots)},
                {"symmetric", divided_difference_symmetric(f, knots)}};
    return r;
  });
  dd->add_option("--f", o.f)->required();
  dd->add_option("--knots", o.nodes)->required()->delimiter(',');

  auto* id51 = add("identity51", "divided difference as a q-integral against the q-B-spline", [](Options& o, std::istream& in) {
    const IntegralConfig cfg = make_config(o);
    const FunctionSpec f = function_from_json(parse_json(read_source(o.f, in)));
    const KnotVector knots(o.nodes);
    const IdentitySides s = divdiff_integral_identity(f, knots, QParam(o.q), cfg, o.a_opt, o.b_opt);
    Record r;
    r.inputs = {{"f", function_to_json(f)}, {"knots", o.nodes}, {"q", o.q}};
    r.result = {{"lhs", s.lhs}, {"rhs", s.rhs}};
    r.metadata = config_json(cfg);
    r.metadata["q"] = o.q;
    return r;
  });
  id51->add_option("--f", o.f)->required();
  id51->add_option("--knots", o.nodes)->required()->delimiter(',');
  id51->add_option("--q", o.q)->required();
  id51->add_option("--a", o.a_opt);
  id51->add_option("--b", o.b_opt);

  std::vector<std::string> argv_store{"qpeano-cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qpeano-cli: " << e.what() << '\n';
    emit_error(out, "usage", e.what());
    return kExitUsage;
  }

  for (auto& [sub, entry] : handlers) {
    if (!sub->parsed()) continue;
    try {
      const Record r = entry.second(o, in);
      emit(out, entry.first, r, o);
      return kExitOk;
    } catch (const Json::exception& e) {
      err << "qpeano-cli: " << e.what() << '\n';
      emit_error(out, "input", e.what());
      return kExitData;
    } catch (const InputError& e) {
      err << "qpeano-cli: " << e.what() << '\n';
      emit_error(out, "input", e.what());
      return kExitData;
    } catch (const std::logic_error& e) {  // DomainError, invalid_argument, out_of_range
      err << "qpeano-cli: " << e.what() << '\n';
      emit_error(out, "domain", e.what());
      return kExitDomain;
    }
  }
  return kExitUsage;
}

}  // namespace qpeano::cli
