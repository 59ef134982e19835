#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hgmp/config.hpp"
#include "hgmp/csv.hpp"
#include "hgmp/world.hpp"

using namespace hgmp;

TEST_CASE("defaults describe the reference mission") {
  const MissionConfig c;
  CHECK(c.width == 100);
  CHECK(c.height == 100);
  CHECK(c.hunters == 4);
  CHECK(c.gatherers == 2);
  CHECK(c.live_tasks == 50);
  CHECK(c.iterations == 1000);
  CHECK(c.hunter_incentive == 140.0);
  CHECK(c.alpha_g == 0.15);
  CHECK(c.alpha_h == 0.35);
  CHECK(c.sensor_radius == 2);
  CHECK(c.forget_after == 100);
  CHECK_NOTHROW(c.validate());
  CHECK(uncertainty_radius(c.gatherer_params()) == doctest::Approx(42.0));
}

TEST_CASE("serialize and parse round-trip") {
  MissionConfig c;
  c.set("alpha_g", "0.025");
  c.set("beta_h", "0.1");
  c.set("rho_ratio", "0.3");
  c.set("q_max", "10");
  c.set("forget_after", "never");
  c.set("placement", "depot");
  c.set("tasks", "1,2; 3,4");
  c.set("seed", "18446744073709551615");
  const MissionConfig back = MissionConfig::parse(c.serialize());
  CHECK(back.serialize() == c.serialize());
  CHECK(back.alpha_g == 0.025);
  CHECK(back.rho_h == doctest::Approx(0.3));
  CHECK(back.forget_after == kNeverForget);
  CHECK(back.placement == Placement::kDepot);
  CHECK(back.tasks == std::vector<Cell>{{1, 2}, {3, 4}});
  CHECK(back.seed == 18446744073709551615ULL);
}

TEST_CASE("parse accepts comments and blank lines") {
  const MissionConfig c = MissionConfig::parse("# mission\n\nhunters = 3   # fewer\n incentive = 10\nq_max = 4.0\n");
  CHECK(c.hunters == 3);
  CHECK(c.hunter_incentive == 10.0);
  CHECK(c.gatherer_incentive == 10.0);
  CHECK(c.extra_incentive == 10.0);
  CHECK(c.q_max == 4);
}

TEST_CASE("bad input is reported with the key") {
  MissionConfig c;
  CHECK_THROWS_WITH_AS(c.set("nope", "1"), doctest::Contains("nope"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(c.set("hunters", "four"), doctest::Contains("hunters"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(c.set("q_max", "2.5"), doctest::Contains("q_max"), std::invalid_argument);
  CHECK_THROWS_AS(MissionConfig::parse("hunters 4\n"), std::invalid_argument);
  c.alpha_g = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("alpha_g"), std::invalid_argument);
  MissionConfig q;
  q.q_max = 0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("hash ignores the seed only") {
  MissionConfig a, b;
  b.seed = 99;
  CHECK(a.hash() == b.hash());
  b.q_max = 3;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("format_number is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(140.0) == "140");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv parsing and escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");

  std::ostringstream out;
  const std::vector<std::string> header = {"x", "label"};
  const std::vector<std::string> row = {"1.5", "a,\"b\""};
  write_csv_row(out, header);
  write_csv_row(out, row);
  const CsvTable t = CsvTable::parse(out.str());
  CHECK(t.header() == header);
  REQUIRE(t.size() == 1);
  CHECK(t.rows()[0] == row);
  CHECK(t.number(0, t.column("x")) == 1.5);
  CHECK_FALSE(t.find("y"));
  CHECK_THROWS_AS(t.column("y"), std::invalid_argument);
  CHECK_THROWS_AS(t.number(0, 1), std::invalid_argument);

  CHECK_THROWS_AS(CsvTable::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(CsvTable::parse("a,b\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(CsvTable::parse("a\n\"open\n"), std::invalid_argument);
  CHECK(CsvTable::parse("a,b\r\n1,2\r\n").rows()[0][1] == "2");
}
