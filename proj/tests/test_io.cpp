#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "qha/datum_io.hpp"
#include "qha/errors.hpp"

using namespace qha;
using nlohmann::json;

namespace {

void same(const DatumFile& a, const DatumFile& b) {
  CHECK(a.datum.base.orders() == b.datum.base.orders());
  CHECK(a.datum.h == b.datum.h);
  CHECK(a.datum.r == b.datum.r);
  CHECK(a.datum.A == b.datum.A);
  CHECK(a.lambda == b.lambda);
  CHECK(a.mu == b.mu);
  REQUIRE(a.c.has_value() == b.c.has_value());
  if (a.c) CHECK(a.c->str() == b.c->str());
  CHECK(a.recipe == b.recipe);
  CHECK(a.recipe_args == b.recipe_args);
}

json minimal() {
  return json::parse(R"({"schema": 1, "group": [3], "h": [[3], [3]], "r": [[2], [7]],
                         "cartan": [[2, 0], [0, 2]]})");
}

}  // namespace

TEST_CASE("factory data round-trips through JSON", "[io]") {
  for (auto fo : {factory_sl2_quasi(3, 3, 3), factory_small_qgroup({{2}}, 3, 15, 5, {1}), factory_rank2("B2", 5, 7, 3),
                  factory_series("D", 4, 5, 7, 3), factory_cyclic(3, {1}, {1})}) {
    auto d = from_factory(fo);
    auto j = to_json(d);
    auto back = parse_datum(json::parse(j.dump()));
    INFO(fo.recipe);
    same(d, back);
    CHECK(to_json(back) == j);
  }
}

TEST_CASE("reading a file", "[io]") {
  auto path = std::string("qha_io_test.json");
  {
    std::ofstream os(path);
    os << minimal().dump();
  }
  auto d = read_datum(path);
  std::remove(path.c_str());
  CHECK(d.datum.theta() == 2);
  CHECK_FALSE(d.c);
  CHECK(d.budget == 0);
  CHECK_THROWS_AS(read_datum("does/not/exist.json"), SchemaError);
}

TEST_CASE("schema violations are rejected", "[io]") {
  auto j = minimal();
  CHECK_NOTHROW(parse_datum(j));
  auto bad = [&](auto edit) {
    auto k = minimal();
    edit(k);
    CHECK_THROWS_AS(parse_datum(k), SchemaError);
  };
  bad([](json& k) { k["colour"] = 1; });
  bad([](json& k) { k.erase("h"); });
  bad([](json& k) { k["schema"] = 2; });
  bad([](json& k) { k["group"] = {0}; });
  bad([](json& k) { k["r"] = {{1, 2}, {3}}; });
  bad([](json& k) { k["cartan"] = {{2}}; });
  bad([](json& k) { k["h"] = "x"; });
  bad([](json& k) { k["lambda"] = {{{"i", 0}, {"j", 1}, {"value", 1}, {"extra", 0}}}; });
  bad([](json& k) { k["c"] = {{"c", {1}}, {"c4", 1}}; });
}

TEST_CASE("scalars", "[io]") {
  auto z = CycloNumber::root(9, 2);
  for (auto x : {CycloNumber(0), CycloNumber(-3), z, z * z + CycloNumber(Rational(1, 3)), (z - z.inv()).inv()}) {
    auto j = cyclo_to_json(x);
    CHECK(cyclo_from_json(json::parse(j.dump())) == x);
  }
  CHECK(cyclo_from_json(json(5)) == CycloNumber(5));
  CHECK(cyclo_from_json(json::parse(R"({"conductor": 4, "terms": [[1, "1/2"], [3, "1/2"]]})")).is_zero());
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"conductor": 0, "terms": []})")), SchemaError);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"conductor": 3, "terms": [[0, "x"]]})")), SchemaError);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"conductor": 3, "terms": [], "k": 1})")), SchemaError);
}

TEST_CASE("reports serialize every check", "[io]") {
  Report r;
  r.add("a", true);
  r.add("b", false, "witness");
  auto j = report_to_json(r);
  CHECK(j.dump().find("witness") != std::string::npos);
  CHECK(j.dump().find("\"a\"") != std::string::npos);
}
