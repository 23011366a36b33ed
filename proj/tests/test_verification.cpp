#include <doctest.h>

#include <json.hpp>

#include <clocale>
#include <stdexcept>

#include "mellin/output.hpp"
#include "mellin/verification.hpp"

using namespace mellin;

TEST_CASE("number formatting round-trips and ignores the locale") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.5e-12) == "-2.5e-12");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    CHECK(format_number(1.5) == "1.5");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST_CASE("csv table") {
  CsvTable t({"x", "value", "order"});
  t.add_row(std::vector<double>{0.5, 1.25, 2});
  t.add_row(std::vector<std::string>{"a,b", "say \"hi\"", "3"});
  CHECK(t.str() == "x,value,order\n0.5,1.25,2\n\"a,b\",\"say \"\"hi\"\"\",3\n");
  CHECK_THROWS_AS(t.add_row(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("seeded stream is reproducible") {
  SeededStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    if (x != c.uniform()) differs = true;
  }
  CHECK(differs);
  SeededStream d(1);
  for (int i = 0; i < 100; ++i) CHECK(d.index(5) < 5);
}

TEST_CASE("suites are deterministic and schema-stable") {
  VerifyOptions opts;
  opts.seed = 42;
  const VerificationReport a = run_verification("algebra", opts);
  const VerificationReport b = run_verification("algebra", opts);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK_FALSE(a.any_failed());
  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["seed"] == 42);
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("status"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("tolerance"));
    CHECK(!c["anchor"].get<std::string>().empty());
  }
  opts.seed = 7;
  CHECK(run_verification("algebra", opts).to_json() != a.to_json());
}

TEST_CASE("young suite margins") {
  const VerificationReport r = run_verification("young");
  CHECK(r.checks.size() > 4);
  CHECK_FALSE(r.any_failed());
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_verification("nosuch"), std::invalid_argument); }
