#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "goldenmap");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = gm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("rational parsing") {
  using gm::Rational;
  CHECK(gm::cli::parse_rational("-2") == Rational(-2));
  CHECK(gm::cli::parse_rational("-1/2") == Rational(-1, 2));
  CHECK(gm::cli::parse_rational("-0.5") == Rational(-1, 2));
  CHECK(gm::cli::parse_rational("-5e-1") == Rational(-1, 2));
  CHECK(gm::cli::parse_rational("1.25E2") == Rational(125));
  CHECK_THROWS(gm::cli::parse_rational("abc"));
  CHECK_THROWS(gm::cli::parse_rational("1/0"));
}

TEST_CASE("periodic subcommand") {
  auto r = run({"periodic", "--a", "-2", "--period", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 5);  // header and four points
  CHECK(r.out.rfind("cycle,period,x,y", 0) == 0);
}

TEST_CASE("excluded parameter") {
  auto r = run({"periodic", "--a", "-1", "--period", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("parameter excluded") != std::string::npos);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["module"].is_string());
  CHECK(run({"iterate", "--a", "0.5", "--x", "1", "--y", "1"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"periodic", "--a", "-2", "--period", "99"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("exact iteration") {
  auto r = run({"iterate", "--a", "-1/2", "--x", "3/4", "--y", "-3/4", "--steps", "2", "--precision", "exact"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 4);
  CHECK(r.out.find("3/4,-3/4") != std::string::npos);
  CHECK(run({"iterate", "--a", "-2", "--x", "1", "--y", "0", "--steps", "1"}).code == 1);
}

TEST_CASE("coding and degrees") {
  auto c = run({"code", "--a", "-2", "--x", "1.5", "--y", "-1.5", "--back", "3", "--fwd", "3"});
  CHECK(c.code == 0);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j.is_object());
  CHECK(run({"degrees", "--a", "-2", "--n", "5"}).code == 0);
}

TEST_CASE("config file") {
  const auto path = std::filesystem::temp_directory_path() / "goldenmap_cli_test.toml";
  {
    std::ofstream f(path);
    f << "[periodic]\na = -2\nperiod = 2\n";
  }
  auto r = run({"--config", path.string(), "periodic"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 2);
  auto o = run({"--config", path.string(), "periodic", "--period", "3"});
  CHECK(lines(o.out) == 5);
  std::filesystem::remove(path);
}
