#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "harmsum/cli.hpp"

using harmsum::cli::OutputRecord;
using harmsum::cli::run;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("successful commands exit 0") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum", "S", "2", "closed"},
           {"sum", "T", "1", "closed"},
           {"sum", "U", "3", "accel", "--tol", "1e-9"},
           {"sum", "T", "3", "direct", "--terms", "50"},
           {"sum", "S", "3", "integral", "--form", "eq3"},
           {"sum", "derived", "accel"},
           {"verify", "lemma26"},
           {"pi2", "0", "8"}}) {
    CAPTURE(args.front());
    const Invocation r = invoke(args);
    CHECK(r.code == 0);
    CHECK(!r.out.empty());
  }
}

TEST_CASE("closed values and accelerated values agree through the CLI") {
  const auto closed = OutputRecord::from_json(
      nlohmann::ordered_json::parse(invoke({"sum", "U", "3", "closed", "--format", "json"}).out));
  const auto accel = OutputRecord::from_json(
      nlohmann::ordered_json::parse(invoke({"sum", "U", "3", "accel", "--tol", "1e-9", "--format", "json"}).out));
  CHECK(std::fabs(std::get<double>(closed.value) - std::get<double>(accel.value)) < 1e-9);
  CHECK(accel.method == "accelerated");
  CHECK(accel.error_estimate.has_value());
  CHECK(closed.decomposition.has_value());

  const Invocation s2 = invoke({"sum", "S", "2", "closed"});
  CHECK(s2.out.find("value: 0.1271613037212348") != std::string::npos);
  CHECK(s2.out.find("decomposition: -1/8*pi + 3/4*log(2)") != std::string::npos);
  const Invocation t1 = invoke({"sum", "T", "1", "closed"});
  CHECK(t1.out.find("value: 0\n") != std::string::npos);
}

TEST_CASE("verification failures exit 1") {
  const Invocation r = invoke({"verify", "cor23", "--tolerance-scale", "1e-30"});
  CHECK(r.code == 1);
  CHECK(r.err.find("FAIL") != std::string::npos);
  CHECK(r.out.find("method: fail") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"pi2", "0", "0"},
           {"pi2", "0"},
           {"sum", "X", "2", "closed"},
           {"sum", "S", "two", "closed"},
           {"sum", "S", "2", "nonsense"},
           {"sum", "S", "0", "closed"},
           {"sum", "S", "2"},
           {"sum", "S", "2", "accel", "--tol", "-1"},
           {"sum", "S", "2", "closed", "--format", "xml"},
           {"verify", "nosuch"}}) {
    CAPTURE(args.size());
    const Invocation r = invoke(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
  }
}

TEST_CASE("numeric failures exit 3") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum", "S", "2", "accel", "--tol", "1e-30"},
           {"sum", "T", "3", "accel", "--tol", "1e-14", "--terms", "20"},
           {"pi2", "-1", "1"},
           {"pi2", "200000000", "1"}}) {
    CAPTURE(args.back());
    const Invocation r = invoke(args);
    CHECK(r.code == 3);
    CHECK(r.out.empty());
  }
}

TEST_CASE("JSON output round-trips") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum", "T", "5", "closed", "--format", "json"},
           {"sum", "S", "4", "integral", "--format", "json"},
           {"sum", "derived", "accel", "--tol", "1e-9", "--format", "json"},
           {"verify", "lemma25", "--format", "json"},
           {"pi2", "100", "20", "--format", "json"}}) {
    const std::string text = invoke(args).out;
    const auto json = nlohmann::ordered_json::parse(text);
    std::vector<std::string> keys;
    for (const auto& [key, value] : json.items()) keys.push_back(key);
    CHECK(keys == std::vector<std::string>{"command", "inputs", "value", "decomposition", "error_estimate",
                                           "method"});
    const OutputRecord rec = OutputRecord::from_json(json);
    CHECK(OutputRecord::from_json(rec.to_json()) == rec);
    CHECK(rec.to_json().dump() + "\n" == text);
  }
}

TEST_CASE("identical invocations are bit-identical") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum", "U", "7", "accel", "--format", "json"},
           {"verify", "cor24", "--seed", "42", "--cases", "20", "--format", "json"},
           {"pi2", "500", "24", "--parallel", "3"}}) {
    const Invocation a = invoke(args);
    const Invocation b = invoke(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("parallel digit runs are ordered by position") {
  const std::string serial = invoke({"pi2", "40", "40"}).out;
  for (const std::string workers : {"2", "3", "8"}) {
    CHECK(invoke({"pi2", "40", "40", "--parallel", workers}).out == serial);
  }
  const auto rec = OutputRecord::from_json(nlohmann::ordered_json::parse(invoke({"pi2", "0", "24", "--format", "json"}).out));
  const auto head = OutputRecord::from_json(nlohmann::ordered_json::parse(invoke({"pi2", "0", "16", "--format", "json"}).out));
  CHECK(std::get<std::string>(rec.value).substr(0, 16) == std::get<std::string>(head.value));
}

TEST_CASE("golden JSON records") {
  const struct {
    const char* file;
    std::vector<std::string> args;
  } cases[] = {
      {"sum_S_2_closed.json", {"sum", "S", "2", "closed", "--format", "json"}},
      {"sum_T_5_closed.json", {"sum", "T", "5", "closed", "--format", "json"}},
      {"sum_U_6_closed.json", {"sum", "U", "6", "closed", "--format", "json"}},
      {"sum_derived_closed.json", {"sum", "derived", "closed", "--format", "json"}},
      {"sum_U_3_accel.json", {"sum", "U", "3", "accel", "--tol", "1e-9", "--format", "json"}},
      {"verify_lemma26.json", {"verify", "lemma26", "--format", "json"}},
      {"pi2_0_16.json", {"pi2", "0", "16", "--format", "json"}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    CHECK(invoke(c.args).out == read_file(std::string(HARMSUM_GOLDEN_DIR) + "/" + c.file));
  }
}

TEST_CASE("suite registry") {
  CHECK(harmsum::cli::suite_names().size() == 6);
  CHECK_THROWS_AS(harmsum::cli::run_suite("nope"), std::invalid_argument);
  const auto report = harmsum::cli::run_suite("lemma26");
  CHECK(report.passed());
  CHECK(report.checks == 50);
  CHECK(report.max_residual < 1e-12);
}

}  // TEST_SUITE
