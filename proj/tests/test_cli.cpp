#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MELLIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double column(const std::vector<std::string>& row, std::size_t i) { return std::stod(row.at(i)); }

}  // namespace

TEST_CASE("transform rows") {
  const Run r = run("transform --f log-gauss --s 0");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"s", "value", "error_estimate"});
  CHECK(column(rows[1], 1) == doctest::Approx(1.7724539).epsilon(1e-7));
  CHECK(column(rows[1], 2) < 1e-9);

  const auto zero = parse_csv(run("transform --f zero --s 1").out);
  CHECK(zero.at(1) == std::vector<std::string>{"1", "0", "0"});

  const auto t2 = parse_csv(run("transform --f theta2 --s 10").out);
  CHECK(column(t2.at(1), 1) >= 102.3);
}

TEST_CASE("usage errors") {
  CHECK(run("transform --f nosuch --s 0").status == 2);
  CHECK(run("transform --f log-gauss --s abc").status == 2);
  CHECK(run("bogus").status != 0);
}

TEST_CASE("json output and atomic file output") {
  const std::string path = std::string(MELLIN_TMP_DIR) + "/transform.json";
  std::remove(path.c_str());
  REQUIRE(run("--format json --out " + path + " transform --f log-gauss --s -1..1").status == 0);
  std::ifstream is(path);
  const auto j = nlohmann::json::parse(is);
  CHECK(j["columns"].size() == 3);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][1][1].get<double>() == doctest::Approx(1.7724539).epsilon(1e-7));
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
}

TEST_CASE("density experiment") {
  const auto rows = parse_csv(run("experiment density --f log-gauss --alpha 0 --beta 1 --n 4..64").out);
  REQUIRE(rows.size() == 62);
  CHECK(rows[0] == std::vector<std::string>{"n", "error", "fitted_slope"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(column(rows[i], 1) < column(rows[i - 1], 1));
  CHECK(column(rows[1], 2) <= -0.8);
}

TEST_CASE("nonnormability experiment") {
  const auto rows = parse_csv(run("experiment nonnormability --indices 0,0 --eps 1 --m 2..64").out);
  REQUIRE(rows.size() == 64);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(column(rows[i], 1) < 1.0);
  CHECK(column(rows[1], 3) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("recovery commands") {
  const auto rows = parse_csv(run("experiment recovery --s-hidden 1.5").out);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(column(rows[i], 1) - 1.5) < 1e-6);
  const Run r = run("recover-s --s-hidden -2.25 --base bump --probes 0.5,2,3");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["s_estimate"].get<double>() + 2.25) < 1e-6);
  CHECK(j["phi_samples"].size() == 3);
}

TEST_CASE("e-function and table") {
  const auto e = parse_csv(run("e-function --c 0.5 --grid -2..3").out);
  REQUIRE(e.size() == 7);
  for (std::size_t i = 2; i < e.size(); ++i) CHECK(column(e[i], 1) > column(e[i - 1], 1));
  const auto t = parse_csv(run("table --function theta --order 0,1 --points 5").out);
  REQUIRE(t.size() == 11);
  CHECK(t[0] == std::vector<std::string>{"x", "value", "order"});
  CHECK(t[3][1] == "0.5");
  const auto c = parse_csv(run("table --function theta4 --order 2 --points 9").out);
  CHECK(c.size() == 10);
}

TEST_CASE("verify exit codes and determinism") {
  const Run a = run("verify --suite density --seed 42");
  const Run b = run("verify --suite density --seed 42");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  // the literal eta extremal recursion is reported as failing
  CHECK(run("verify --suite special").status == 1);
  const auto csv = parse_csv(run("verify --suite e-function --format csv").out);
  CHECK(csv.at(0).at(0) == "name");
}
