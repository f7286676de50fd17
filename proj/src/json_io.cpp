#include "qpeano/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace qpeano {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

void write_string(std::ostream& os, const std::string& s) { os << Json(s).dump(); }

void write_value(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        write_string(os, it.key());
        os << sep;
        write_value(os, it.value(), indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line so tables remain readable.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      os << '[';
      if (!flat) os << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat ? ", " : ",") << (flat ? "" : nl);
        first = false;
        if (!flat) os << pad;
        write_value(os, v, indent, depth + 1);
      }
      if (!flat) os << nl << close;
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

FunctionSpec function_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string()) throw InputError("function 'type' must be a string");
  const auto t = type.get<std::string>();
  if (t == "polynomial") return Polynomial(numbers(field(j, "coeffs"), "coeffs"));
  if (t == "piecewise") {
    auto br = numbers(field(j, "breakpoints"), "breakpoints");
    const Json& pj = field(j, "pieces");
    if (!pj.is_array()) throw InputError("pieces must be an array of coefficient arrays");
    std::vector<Polynomial> pieces;
    for (const auto& p : pj) pieces.emplace_back(numbers(p, "piece coefficients"));
    const double outside = j.contains("outside") ? number(j.at("outside"), "outside") : 0.0;
    return PiecewisePolynomial(std::move(br), std::move(pieces), outside);
  }
  if (t == "builtin") {
    const Json& name = field(j, "name");
    if (!name.is_string()) throw InputError("builtin 'name' must be a string");
    std::map<std::string, double> params;
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw InputError("builtin 'params' must be an object");
      for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) {
        params[it.key()] = number(it.value(), "builtin parameter");
      }
    }
    return BuiltinFunction::make(name.get<std::string>(), std::move(params));
  }
  throw InputError("unknown function type '" + t + "'");
}

Json function_to_json(const FunctionSpec& f) {
  if (const auto* p = f.polynomial()) return {{"type", "polynomial"}, {"coeffs", p->coeffs()}};
  if (const auto* pw = f.piecewise()) {
    Json pieces = Json::array();
    for (const auto& piece : pw->pieces()) pieces.push_back(piece.coeffs());
    return {{"type", "piecewise"},
            {"breakpoints", pw->breakpoints()},
            {"pieces", pieces},
            {"outside", pw->outside()}};
  }
  const auto* b = f.builtin();
  if (!b->is_registered()) throw DomainError("custom function '" + b->name() + "' has no JSON form");
  Json params = Json::object();
  for (const auto& [k, v] : b->params()) params[k] = v;
  return {{"type", "builtin"}, {"name", b->name()}, {"params", params}};
}

LinearFunctional functional_from_json(const Json& j) {
  const double q = number(field(j, "q"), "q");
  const Json& dom = field(j, "domain");
  const double a = number(field(dom, "a"), "domain.a");
  const double b = number(field(dom, "b"), "domain.b");
  std::vector<PointTerm> pts;
  if (j.contains("point_terms")) {
    if (!j.at("point_terms").is_array()) throw InputError("point_terms must be an array");
    for (const auto& p : j.at("point_terms")) {
      pts.push_back({number(field(p, "c"), "point c"), number(field(p, "x"), "point x")});
    }
  }
  std::vector<IntegralTerm> ints;
  if (j.contains("integral_terms")) {
    if (!j.at("integral_terms").is_array()) throw InputError("integral_terms must be an array");
    for (const auto& t : j.at("integral_terms")) {
      ints.push_back({number(field(t, "w"), "integral w"), number(field(t, "a"), "integral a"),
                      number(field(t, "b"), "integral b")});
    }
  }
  return LinearFunctional(std::move(pts), std::move(ints), a, b, QParam(q));
}

Json functional_to_json(const LinearFunctional& L) {
  Json pts = Json::array();
  for (const auto& p : L.point_terms()) pts.push_back({{"c", p.coef}, {"x", p.x}});
  Json ints = Json::array();
  for (const auto& t : L.integral_terms()) ints.push_back({{"w", t.weight}, {"a", t.lo}, {"b", t.hi}});
  return {{"q", L.q().value()},
          {"domain", {{"a", L.a()}, {"b", L.b()}}},
          {"point_terms", pts},
          {"integral_terms", ints}};
}

QuadratureRule rule_from_json(const Json& j) {
  const Json& m = field(j, "design_degree");
  if (!m.is_number_integer()) throw InputError("design_degree must be an integer");
  return QuadratureRule(KnotVector(numbers(field(j, "nodes"), "nodes")),
                        numbers(field(j, "weights"), "weights"), number(field(j, "b"), "b"),
                        QParam(number(field(j, "q"), "q")), m.get<int>());
}

Json rule_to_json(const QuadratureRule& rule) {
  return {{"nodes", rule.nodes().values()},
          {"weights", rule.weights()},
          {"b", rule.b()},
          {"q", rule.q().value()},
          {"design_degree", rule.design_degree()}};
}

void write_json(std::ostream& os, const Json& j, int indent) {
  write_value(os, j, indent, 0);
  os << '\n';
}

}  // namespace qpeano
