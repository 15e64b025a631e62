#include <sstream>

#include "doctest.h"
#include "harmoniq/cli.hpp"
#include "harmoniq/json_out.hpp"

using namespace harmoniq;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rus output is deterministic and carries the documented fields") {
  CliResult a = cli({"rus", "--n", "8", "--trials", "20000", "--seed", "1"});
  CliResult b = cli({"rus", "--n", "8", "--trials", "20000", "--seed", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  for (const char* key : {"\"n\"", "\"trials\"", "\"mean\"", "\"stderr\"", "\"fit\""})
    CHECK(a.out.find(key) != std::string::npos);

  CliResult c = cli({"rus", "--n", "8", "--trials", "20000", "--seed", "2"});
  CHECK(c.out != a.out);
}

TEST_CASE("thread count does not change results") {
  CliResult one = cli({"--threads", "1", "rus", "--n", "16", "--trials", "40000"});
  CliResult two = cli({"--threads", "2", "rus", "--n", "16", "--trials", "40000"});
  CHECK(one.out == two.out);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"rus"}).code == 2);                          // missing --n
  CHECK(cli({"rus", "--n", "8", "--bogus", "1"}).code == 2);
  CHECK(cli({"linear", "--n", "64"}).code == 2);          // out of simulation range
  CHECK(cli({"optimize", "--target", "state", "--n", "20", "--epsilon", "1e-15"}).code == 2);
  CliResult r = cli({"rus", "--n", "8", "--bogus", "1"});
  CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE("verify suites emit per-check lines and exit 0 when green") {
  CliResult r = cli({"verify", "--suite", "widgets", "--nmax", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS widget_k1") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("numbers are printed with 17 significant digits") {
  CHECK(format_double17(1.0 / 3.0) == "0.33333333333333331");
  CliResult r = cli({"optimize", "--target", "state", "--n", "12", "--epsilon", "1e-6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"epsilon\": 9.9999999999999995e-07") != std::string::npos);
}

TEST_CASE("csv format emits a header plus one line per row") {
  CliResult r = cli({"--format", "csv", "optimize", "--target", "state", "--n", "10", "--n", "12",
                     "--epsilon", "1e-6"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 2) == "n,");
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 3);  // header + two rows
}

TEST_CASE("state command reports pipeline fidelity") {
  CliResult r = cli({"state", "--n", "4", "--m", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"epsilon_achieved\"") != std::string::npos);
  CHECK(r.out.find("\"success_prob\"") != std::string::npos);
}

TEST_CASE("linear command round-trips through the simulator") {
  CliResult r = cli({"linear", "--n", "4"});
  CHECK(r.code == 0);
  bool tiny = r.out.find("\"distance\": 0") != std::string::npos ||
              r.out.find("e-16") != std::string::npos ||
              r.out.find("e-17") != std::string::npos;
  CHECK(tiny);
}
