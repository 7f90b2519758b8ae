#include <doctest.h>

#include "locdens/cli.hpp"
#include "locdens/serialize.hpp"

#include <sstream>

using namespace locdens;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "locdens");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count") {
  Run r = run({"count", "--lattice", "L3", "--p", "2", "--m", "4", "--t", "2"});
  CHECK(r.code == exit_ok);
  CHECK(r.out.rfind("768", 0) == 0);
  r = run({"count", "--lattice", "H0 + <1>", "--p", "2", "--m", "3", "--t", "1"});
  CHECK(r.out.rfind("128", 0) == 0);
  CHECK(r.out.find("convolution") != std::string::npos);
  r = run({"count", "--lattice", "H0", "--p", "3", "--m", "2", "--t", "0", "--format", "json"});
  CHECK(json::parse(r.out)["count"] == "21");
  r = run({"count", "--lattice", "H0", "--m", "2", "--t", "123456789012345678901234567890"});
  CHECK(r.code == exit_ok);
}

TEST_CASE("density") {
  Run r = run({"density", "--lattice", "H1", "--t", "2"});
  CHECK(r.out.rfind("3 ", 0) == 0);
  r = run({"density", "--lattice", "H1", "--t", "1", "--normalization", "q", "--format", "json"});
  const json j = json::parse(r.out);
  CHECK(j["alpha"]["num"] == "3");
  CHECK(j["alpha"]["den"] == "2");
  r = run({"density", "--lattice", "H0", "--t", "0", "--format", "json"});
  CHECK(r.code == exit_ok);
  CHECK(json::parse(r.out)["alpha"]["status"] == "diverges");
  r = run({"density", "--lattice", "L3", "--t", "0"});
  CHECK(r.code == exit_singular);
}

TEST_CASE("series") {
  Run r = run({"series", "--lattice", "H0", "--p", "2", "--t", "0"});
  CHECK(r.code == exit_ok);
  CHECK(r.out == "(4X - 4X^2)/(1 - 4X + 4X^2)\n");
  r = run({"series", "--lattice", "L3", "--t", "2"});
  CHECK(r.code == exit_usage);
  r = run({"series", "--lattice", "H1", "--t", "0", "--format", "json"});
  CHECK(json::parse(r.out).get<RationalSeries>() == series_h1(0));
}

TEST_CASE("verify") {
  Run r = run({"verify", "--suite", "halflift", "--d", "3", "--nmax", "5"});
  CHECK(r.code == exit_ok);
  const json report = json::parse(r.out);
  CHECK(report["summary"]["fail"] == 0);
  CHECK(report["summary"]["pass"].get<int>() > 0);

  r = run({"verify", "--suite", "halflift", "--d", "4", "--a", "8"});
  CHECK(r.code == exit_ok);
  const json control = json::parse(r.out);
  bool saw_ratio_12 = false;
  for (const auto& inst : control["instances"]) {
    CHECK(inst["detail"]["hypotheses_ok"] == false);
    if (inst["detail"]["n"] == 3) saw_ratio_12 = inst["detail"]["ratio_num"] == "12";
  }
  CHECK(saw_ratio_12);

  r = run({"verify", "--suite", "table1"});
  CHECK(r.code == exit_ok);

  // the sweep shrinks to fit the budget rather than skipping
  const int full = json::parse(run({"verify", "--suite", "oracle"}).out)["summary"]["pass"];
  r = run({"verify", "--suite", "oracle", "--budget", "16"});
  CHECK(r.code == exit_ok);
  const int small = json::parse(r.out)["summary"]["pass"];
  CHECK(small > 0);
  CHECK(small < full);
}

TEST_CASE("table") {
  Run r = run({"table", "--family", "L3", "--kmax", "2", "--format", "json"});
  CHECK(r.code == exit_ok);
  const json j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 18);
  for (const auto& row : j["rows"]) {
    const long a0 = row["a0"];
    const long k = row["k"];
    const Rational got = rational_from_json(row["density"]["alpha"]);
    const Rational base = a0 == 7 ? Rational(0) : a0 == 3 ? Rational(2) : Rational(3);
    CHECK(got == base / ipow(2, static_cast<unsigned>(k)));
  }
  r = run({"table", "--family", "TypeI", "--a", "1", "--u", "3", "--vmax", "3"});
  CHECK(r.code == exit_ok);
}

TEST_CASE("errors and exit codes") {
  CHECK(run({"count", "--lattice", "H0 + <1", "--m", "3", "--t", "1"}).code == exit_usage);
  CHECK(run({"count", "--lattice", "H1", "--p", "3", "--m", "3", "--t", "1"}).code == exit_usage);
  CHECK(run({"count", "--lattice", "H0", "--p", "4", "--m", "3", "--t", "1"}).code == exit_usage);
  CHECK(run({"count", "--lattice", "H0", "--m", "3", "--t", "x"}).code == exit_usage);
  CHECK(run({"count", "--lattice", "H0"}).code == exit_usage);
  CHECK(run({}).code == exit_usage);
  CHECK(run({"count", "--lattice", "<1>", "--p", "3", "--m", "12", "--t", "1", "--budget", "100"})
            .code == exit_budget);
  CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("budget flag beats the environment") {
  setenv("LOCDENS_BUDGET", "10", 1);
  CHECK(run({"count", "--lattice", "<1>", "--p", "3", "--m", "5", "--t", "1"}).code == exit_budget);
  CHECK(run({"count", "--lattice", "<1>", "--p", "3", "--m", "5", "--t", "1", "--budget", "100000"})
            .code == exit_ok);
  unsetenv("LOCDENS_BUDGET");
}

}
