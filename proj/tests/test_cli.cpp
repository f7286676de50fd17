#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qpeano/cli.hpp"
#include "qpeano/json_io.hpp"
#include "qpeano/qspline.hpp"

using namespace qpeano;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Outcome& o) { return Json::parse(o.out); }

}  // namespace

TEST_CASE("cli: arithmetic") {
  const auto o = invoke({"qint", "--n", "3", "--q", "2"});
  REQUIRE(o.code == cli::kExitOk);
  const Json j = parsed(o);
  CHECK(j["command"] == "qint");
  CHECK(j["result"].get<double>() == 7.0);
  CHECK(o.out.find("\"result\": 7") != std::string::npos);
  CHECK(j.contains("metadata"));
  CHECK(parsed(invoke({"qfact", "--n", "3", "--q", "2"}))["result"].get<double>() == 21.0);
}

TEST_CASE("cli: trapz matches the library bit for bit") {
  const std::string f = R"({"type":"polynomial","coeffs":[0,0,1]})";
  const auto o = invoke({"trapz", "--f", f, "--a", "0", "--b", "1", "--q", "2"});
  REQUIRE(o.code == cli::kExitOk);
  const Json r = parsed(o)["result"];
  const auto e = trapezoid_error(Polynomial::monomial(2), 0.0, 1.0, QParam(2.0));
  CHECK(r["rule"].get<double>() == q_trapezoid(Polynomial::monomial(2), 0.0, 1.0, QParam(2.0)));
  CHECK(r["error"].get<double>() == e.actual);
  CHECK(r["constant"].get<double>() == trapezoid_error_constant(0.0, 1.0, QParam(2.0)));
}

TEST_CASE("cli: bspline table") {
  const auto o = invoke({"bspline", "--degree", "3", "--knots", "0,1,2,3,4", "--q", "2", "--grid", "9"});
  REQUIRE(o.code == cli::kExitOk);
  const Json j = parsed(o);
  REQUIRE(j["rows"].size() == 9);
  const KnotVector k({0.0, 1.0, 2.0, 3.0, 4.0});
  for (const auto& row : j["rows"]) {
    const double t = row["t"].get<double>();
    CHECK(row["value"].get<double>() == q_bspline(0, 3, k, t, QParam(2.0)));
  }
  const auto csv = invoke({"bspline", "--degree", "3", "--knots", "0,1,2,3,4", "--q", "2", "--grid", "9",
                           "--format", "csv"});
  REQUIRE(csv.code == cli::kExitOk);
  std::istringstream lines(csv.out);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "t,value");
  while (std::getline(lines, line)) ++count;
  CHECK(count == 9);
}

TEST_CASE("cli: exit codes") {
  const auto unknown = invoke({"frobnicate"});
  CHECK(unknown.code == cli::kExitUsage);
  CHECK_FALSE(unknown.err.empty());
  CHECK(invoke({"qint", "--n", "3"}).code == cli::kExitUsage);
  CHECK(invoke({"qint", "--n", "3", "--q", "2", "--format", "xml"}).code == cli::kExitUsage);

  const auto bad_json = invoke({"qdiff", "--f", "{not json", "--t", "1", "--q", "2"});
  CHECK(bad_json.code == cli::kExitData);
  CHECK(parsed(bad_json)["error"]["kind"] == "input");
  CHECK(invoke({"qdiff", "--f", R"({"type":"nope"})", "--t", "1", "--q", "2"}).code == cli::kExitData);
  CHECK(invoke({"qdiff", "--f", R"({"type":"polynomial","coeffs":"x"})", "--t", "1", "--q", "2"}).code ==
        cli::kExitData);

  const auto domain = invoke({"qint", "--n", "3", "--q", "-1"});
  CHECK(domain.code == cli::kExitDomain);
  CHECK(parsed(domain)["error"]["kind"] == "domain");
  const std::string f = R"({"type":"polynomial","coeffs":[0,0,1]})";
  CHECK(invoke({"trapz", "--f", f, "--a", "0", "--b", "1", "--q", "0.5"}).code == cli::kExitDomain);
  CHECK(invoke({"interp-error", "--f", f, "--nodes", "0,1", "--x", "0.5", "--q", "2", "--m", "5"}).code ==
        cli::kExitDomain);
}

TEST_CASE("cli: stdin and config file") {
  const std::string L = R"({"q":2,"domain":{"a":0,"b":1},
    "point_terms":[{"c":-0.3333333333333333,"x":0},{"c":-0.6666666666666666,"x":1}],
    "integral_terms":[{"w":1,"a":0,"b":1}]})";
  const auto o = invoke({"kernel", "--functional", "-", "--grid", "5"}, L);
  REQUIRE(o.code == cli::kExitOk);
  const Json j = parsed(o);
  CHECK(j["rows"].size() == 5);
  CHECK(j["inputs"]["n"].get<int>() == 1);

  const std::string path = "qpeano_cli_test_config.json";
  {
    std::ofstream cfg(path);
    cfg << R"({"rel_tol": 1e-10, "max_terms": 5000})";
  }
  setenv(cli::kConfigEnv, path.c_str(), 1);
  const std::string f = R"({"type":"polynomial","coeffs":[0,0,1]})";
  const auto c = invoke({"qint-def", "--f", f, "--b", "1", "--q", "2"});
  const auto flag = invoke({"qint-def", "--f", f, "--b", "1", "--q", "2", "--max-terms", "777"});
  setenv(cli::kConfigEnv, "does-not-exist.json", 1);
  const auto missing = invoke({"qint-def", "--f", f, "--b", "1", "--q", "2"});
  unsetenv(cli::kConfigEnv);
  std::remove(path.c_str());

  REQUIRE(c.code == cli::kExitOk);
  CHECK(parsed(c)["metadata"]["rel_tol"].get<double>() == 1e-10);
  CHECK(parsed(c)["metadata"]["max_terms"].get<int>() == 5000);
  CHECK(parsed(c)["result"]["value"].get<double>() == doctest::Approx(4.0 / 7.0));
  CHECK(parsed(flag)["metadata"]["max_terms"].get<int>() == 777);
  CHECK(parsed(flag)["metadata"]["rel_tol"].get<double>() == 1e-10);
  CHECK(missing.code == cli::kExitData);
}

TEST_CASE("json round trips") {
  const FunctionSpec p = Polynomial({1.0, 0.1, -3.25});
  CHECK(function_to_json(function_from_json(function_to_json(p))) == function_to_json(p));
  const FunctionSpec s = example2_spline(QParam(2.0));
  const Json sj = function_to_json(s);
  CHECK(function_to_json(function_from_json(sj)) == sj);
  const FunctionSpec e = BuiltinFunction::make("exp", {{"rate", 0.5}});
  CHECK(function_to_json(function_from_json(function_to_json(e))) == function_to_json(e));
  CHECK_THROWS_AS(function_to_json(BuiltinFunction::custom("mine", [](double x) { return x; })), DomainError);

  const QuadratureRule rule(KnotVector({0.0, 1.0}), {1.0 / 3.0, 2.0 / 3.0}, 1.0, QParam(2.0), 1);
  const Json rj = rule_to_json(rule);
  CHECK(rule_to_json(rule_from_json(rj)) == rj);
  const LinearFunctional L = rule.functional();
  const Json lj = functional_to_json(L);
  CHECK(functional_to_json(functional_from_json(lj)) == lj);

  std::ostringstream os;
  write_json(os, Json{{"x", 0.1}, {"v", Json::array({1.0, 2.5})}});
  CHECK(os.str().find("0.10000000000000001") != std::string::npos);
  CHECK(os.str().find("[1, 2.5]") != std::string::npos);
  CHECK(format_number(std::nan("")) == "null");
}
