#include <sstream>

#include "cli_core.hpp"
#include "doctest.h"

using namespace eismeas;
using eismeas::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eismeas");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("verify emits a config header, reports and a summary") {
  const auto r = run({"verify", "--suite", "lemmas", "--p", "5", "--m", "2"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() > 2);
  CHECK(Json::parse(ls.front()).contains("config"));
  const auto summary = Json::parse(ls.back());
  CHECK(summary["suite"] == "lemmas");
  CHECK(summary["passed"] == true);
  for (std::size_t i = 1; i + 1 < ls.size(); ++i) CHECK(Json::parse(ls[i]).contains("claim"));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"verify", "--suite", "theorem1", "--p", "4"}).code == 2);
  CHECK(run({"verify", "--suite", "theorem1", "--p", "37"}).code == 2);
  CHECK(run({"verify", "--suite", "theorem1", "--k", "5"}).code == 2);
  CHECK(run({"verify", "--suite", "chain", "--mprime", "2"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"table", "--kind", "nope"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("failing checks exit with code 1") {
  const auto r = run({"verify", "--suite", "divisibility"});
  CHECK(r.code == 1);
  CHECK(Json::parse(lines(r.out).back())["passed"] == false);
}

TEST_CASE("tables") {
  const auto b = run({"table", "--kind", "bernoulli"});
  CHECK(b.code == 0);
  CHECK(lines(b.out).size() == 12);
  CHECK(lines(b.out)[3] == "4,-1/30");
  const auto z = run({"table", "--kind", "zeta", "--max-k", "4"});
  CHECK(z.code == 0);
  const auto c = run({"table", "--kind", "characters", "--p", "7"});
  CHECK(lines(c.out).size() == 7);
  const auto mu = run({"table", "--kind", "mustar", "--format", "json"});
  REQUIRE(mu.code == 0);
  const auto j = Json::parse(mu.out);
  CHECK(j["entries"].size() == 4);
  CHECK(j["entries"][0]["value"]["coords"][0] == "-2343750/403");
  const auto mz = run({"table", "--kind", "mazur", "--p", "5", "--m", "2"});
  CHECK(lines(mz.out).size() == 21);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"verify", "--suite", "mazur", "--suite", "kummer", "--suite", "chain"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
