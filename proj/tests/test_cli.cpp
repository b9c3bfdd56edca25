#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "schwarzlift/cli.hpp"
#include "schwarzlift/config.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/parser.hpp"

using namespace schwarzlift;
using oracle::Rng;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "schwarzlift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

cplx eval(const std::string& text, cplx z) { return parse_expression(text).value(z); }

std::size_t error_position(const std::string& text) {
  try {
    parse_expression(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("expression values") {
  const cplx z(0.3, -0.2);
  CHECK(std::abs(eval("1 + 2*3", z) - 7.0) <= 1e-15);
  CHECK(std::abs(eval("-z^2", 2.0) + 4.0) <= 1e-15);
  CHECK(std::abs(eval("2^3^2", z) - 512.0) <= 1e-12);
  CHECK(std::abs(eval("8/2/2", z) - 2.0) <= 1e-15);
  CHECK(std::abs(eval("exp(i*pi)", z) + 1.0) <= 1e-15);
  CHECK(std::abs(eval("2*e", z) - 2.0 * std::exp(1.0)) <= 1e-15);
  CHECK(std::abs(eval("atanh(z)", z) - std::atanh(z)) <= 1e-14);
  CHECK(std::abs(eval("sqrt(z)", z) - std::sqrt(z)) <= 1e-15);
  CHECK(std::abs(eval("tan(z) - sin(z)/cos(z)", z)) <= 1e-15);
  CHECK(std::abs(eval("cosh(z)^2 - sinh(z)^2", z) - 1.0) <= 1e-14);
  CHECK(std::abs(eval("tanh(z)", z) - std::tanh(z)) <= 1e-15);
  CHECK(std::abs(eval("log(z)", z) - std::log(z)) <= 1e-15);
  CHECK(std::abs(eval("int(1 + z)", z) - (z + 0.5 * z * z)) <= 1e-13);
  CHECK(std::abs(eval("int(1, 0.5)", z) - (z - 0.5)) <= 1e-13);
  CHECK(std::abs(eval("z^z", z) - std::exp(z * std::log(z))) <= 1e-14);
  CHECK(std::abs(eval("1e-3 * 2.5E2", z) - 0.25) <= 1e-15);
  CHECK(std::abs(parse_expression("x^2", "x").value(3.0) - 9.0) <= 1e-15);
  CHECK(std::abs(parse_expression("w + 1", "w").value(2.0) - 3.0) <= 1e-15);
}

TEST_CASE("parsed jets match the Cauchy oracle") {
  for (const std::string text : {"exp(z^2) / (2 - z)", "log(3 + z) * z^3", "(1 + z)^(0.5 + 0.25*i)", "int(exp(z))"}) {
    const AnalyticFn f = parse_expression(text);
    const cplx z(0.2, 0.1);
    const Jet3 j = f.eval(z);
    auto fv = [&](cplx w) { return f.value(w); };
    INFO(text);
    CHECK(std::abs(j.f1 - oracle::cauchy_derivative(fv, z, 1)) <= 1e-9);
    CHECK(std::abs(j.f3 - oracle::cauchy_derivative(fv, z, 3)) <= 1e-6);
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(error_position("z+") == 2);
  CHECK(error_position("(z") == 2);
  CHECK(error_position("z)") == 1);
  CHECK(error_position("foo(z)") == 0);
  CHECK(error_position("") == 0);
  CHECK(error_position("2 * # 3") == 4);
  CHECK(error_position("exp(z, z)") != std::string::npos);
  CHECK(error_position("y + 1") == 0);
  const std::string d = parse_diagnostic("z + * 2", 4, "unexpected '*'");
  CHECK(d.find("  z + * 2\n      ^") != std::string::npos);
  CHECK(d.find("unexpected '*'") != std::string::npos);
}

TEST_CASE("config round trip") {
  const RunConfig def;
  CHECK(parse_config(serialize(def)) == def);
  CHECK(serialize(parse_config(serialize(def))) == serialize(def));
  Rng rng(31);
  const std::vector<std::string> words = {"", "pi2over4", "z^2 + 1", "exp(z) - 1", "out dir/file.csv", "a=b"};
  for (int k = 0; k < 200; ++k) {
    RunConfig c;
    c.c = std::ldexp(rng.uniform(0.5, 1.0), rng.integer(-60, 60));
    c.t = rng.uniform(0.0, 3.0);
    c.eps = k % 7 == 0 ? 0.1 : rng.uniform(1e-6, 1.0);
    c.tol = std::pow(10.0, rng.uniform(-15.0, -1.0));
    c.rmax = rng.uniform(0.1, 0.999999);
    c.nr = rng.integer(1, 500);
    c.ntheta = rng.integer(1, 500);
    c.scan_n = rng.integer(10, 100000);
    c.seed = static_cast<std::uint64_t>(rng.eng());
    c.threads = rng.integer(0, 64);
    c.h = words[static_cast<std::size_t>(rng.integer(0, 5))];
    c.csv = words[static_cast<std::size_t>(rng.integer(0, 5))];
    c.p = words[static_cast<std::size_t>(rng.integer(1, 3))];
    const std::string text = serialize(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-9) == "1e-09");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("config errors") {
  try {
    parse_config("c = 2\nbogus = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_config("c = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("nr = 1.5\n"), ParseError);
  CHECK_THROWS_AS(parse_config("just text\n"), ParseError);
  const RunConfig c = parse_config("# comment\n\n  t = 1.5  \nfamily = hille\n");
  CHECK(c.t == 1.5);
  CHECK(c.family == "hille");
  RunConfig e;
  e.family = "expr";
  e.h = "z +";
  try {
    build_map(e);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find("h:") != std::string::npos);
  }
}

TEST_CASE("weights from specs") {
  CHECK(nehari_from_spec("pi2over4")(0.4) == doctest::Approx(kPi * kPi / 4.0));
  CHECK(nehari_from_spec("1/(1-x^2)^2")(0.5) == doctest::Approx(1.0 / 0.5625));
  CHECK_THROWS_AS(nehari_from_spec("1/(1-"), ParseError);
}

TEST_CASE("exit codes") {
  CHECK(run({"check", "--nr", "6", "--ntheta", "6"}).code == kExitPass);
  CHECK(run({"check", "--nr", "6", "--ntheta", "6", "--t", "1.2"}).code == kExitViolated);
  CHECK(run({"scan", "--t", "1.5", "--rmax", "0.99", "--n", "4000"}).code == kExitCollision);
  CHECK(run({"scan", "--n", "2000"}).code == kExitPass);
  CHECK(run({"check", "--c", "-1"}).code == kExitFailure);
  CHECK(run({"check", "--nr", "many"}).code == kExitFailure);
  CHECK(run({"frobnicate"}).code == kExitFailure);
  CHECK(run({"check", "--help"}).code == kExitPass);
  CHECK(run({"extremal", "--p", "1.05*pi2over4"}).code == kExitFailure);
}

TEST_CASE("malformed expressions report a caret") {
  const CliRun r = run({"check", "--family", "expr", "--h-expr", "z + * 2"});
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("z + * 2\n") != std::string::npos);
  CHECK(r.err.find("    ^") != std::string::npos);
  CHECK(run({"check", "--h-expr", "z"}).code == kExitFailure);
}

TEST_CASE("help shows defaults and units") {
  const CliRun r = run({"check", "--help"});
  CHECK(r.out.find("[0.95]") != std::string::npos);
  CHECK(r.out.find("[1e-09]") != std::string::npos);
  CHECK(r.out.find("dimensionless") != std::string::npos);
}

TEST_CASE("extremal CSV") {
  const CliRun r = run({"extremal", "--p", "nehari2", "--rmax", "0.9", "--n", "11"});
  CHECK(r.code == kExitPass);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,u0,phi,phi1,A,p");
  int rows = 0;
  double last_x = 0.0, last_phi = 0.0;
  while (std::getline(is, line)) {
    ++rows;
    std::sscanf(line.c_str(), "%lf,%*f,%lf", &last_x, &last_phi);
  }
  CHECK(rows == 11);
  CHECK(last_x == doctest::Approx(0.9));
  CHECK(last_phi == doctest::Approx(std::atanh(0.9)).epsilon(1e-9));
  CHECK(r.err.find("\"lambda\"") != std::string::npos);
}

TEST_CASE("config files and determinism") {
  const std::string path = temp_path("run.conf");
  const CliRun a = run({"check", "--nr", "8", "--ntheta", "8", "--c", "55", "--save-config", path});
  const CliRun b = run({"check", "--config", path});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(load_config(path).c == 55.0);
  const CliRun c = run({"check", "--config", path, "--c", "60"});
  CHECK(c.out.find("c=60") != std::string::npos);
  std::remove(path.c_str());
  const CliRun s1 = run({"scan", "--n", "3000", "--seed", "7"});
  const CliRun s2 = run({"scan", "--n", "3000", "--seed", "7", "--threads", "1"});
  CHECK(s1.out == s2.out);
  CHECK(run({"check", "--config", temp_path("missing.conf")}).code == kExitFailure);
}

TEST_CASE("mesh and examples commands") {
  const CliRun m = run({"mesh", "--nr", "3", "--ntheta", "8"});
  CHECK(m.code == kExitPass);
  CHECK(m.out.rfind("v ", 0) == 0);
  const CliRun e = run({"examples"});
  CHECK(e.code == kExitPass);
  CHECK(e.out.find("catenoid_exp") != std::string::npos);
  const CliRun v = run({"convexity", "--angles", "2"});
  CHECK(v.code == kExitPass);
}

}  // TEST_SUITE
