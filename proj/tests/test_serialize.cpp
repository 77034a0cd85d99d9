#include "doctest.h"

#include "operadix/errors.hpp"
#include "operadix/serialize.hpp"

#include <fstream>
#include <random>

using namespace operadix;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("operadix-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("scalars") {
  CHECK(integer_json(Integer(42)) == Json(42));
  Integer big("123456789012345678901234567890");
  CHECK(integer_json(big) == Json("123456789012345678901234567890"));
  CHECK(integer_from_json(integer_json(big)) == big);
  CHECK(integer_from_json(Json(-7)) == -7);
  CHECK(rational_json(Rational(-3, 2)) == Json("-3/2"));
  CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
  CHECK(rational_from_json(Json(5)) == 5);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), ParseError);
  CHECK_THROWS_AS(integer_from_json(Json("1/2")), ParseError);
}

TEST_CASE("series and scan results round-trip") {
  PSeries f = revert(parse_sparse_spec("1:1,-1:2,1:3", 9), 9);
  CHECK(series_from_json(to_json(f)) == f);
  PSeries q = PSeries::from_terms({{1, Rational(1)}, {3, Rational(-2, 7)}}, 5);
  CHECK(series_from_json(Json::parse(to_json(q).dump())) == q);
  CHECK_THROWS_AS(series_from_json(Json{{"order", 3}}), ParseError);

  ScanResult hit{7, 1200, 1171};
  auto j = to_json(hit);
  CHECK(j["first_negative"] == 1171);
  CHECK(j["not_koszul"] == true);
  auto back = scan_from_json(Json::parse(j.dump()));
  CHECK(back.n == 7);
  CHECK(back.bound == 1200);
  CHECK(back.first_negative == 1171);
  ScanResult miss{8, 3000, std::nullopt};
  CHECK(to_json(miss)["first_negative"].is_null());
  CHECK_FALSE(scan_from_json(to_json(miss)).first_negative.has_value());
}

TEST_CASE("report objects") {
  auto c = to_json(arity5_cycle_analysis());
  CHECK(c["kernel_dim"] == 7);
  CHECK(c["squares_rank"] == 3);
  CHECK(c["required_generators"] == 4);
  CHECK(c["mu5_completeness"] == true);
  auto d = to_json(discriminant_obstruction(8));
  CHECK(d["discriminant"] == 4);
  CHECK(d["method_applies"] == false);
  CHECK(d["real_critical_points"] == Json::array({"(1/3)^(1/7)", "(1/5)^(1/7)"}));
  CohomologyDims dims{3, 0, 60};
  auto back = dims_from_json(Json::parse(to_json(dims).dump()));
  CHECK(back.h1 == 3);
  CHECK(back.h3 == 60);
  CHECK(to_json(koszul_verdict({Family::PartAss, 3, 1}))["status"] == "koszul");
}

TEST_CASE("algebra files round-trip") {
  auto alg = free_antiassoc(1);
  auto j = to_json(alg);
  CHECK(j["dim"] == 3);
  CHECK(j["table"][0][1] == Json::array({"0", "0", "-1"}));
  auto back = algebra_from_json(Json::parse(j.dump()));
  CHECK(back.dim == alg.dim);
  CHECK(back.basis == alg.basis);
  CHECK(back.table == alg.table);

  std::mt19937_64 rng(3);
  auto r = random_antiassoc(3, rng);
  CHECK(algebra_from_json(to_json(r)).table == r.table);

  auto plain = Json::parse(R"({"dim": 1, "basis": ["e"], "table": [[[0]]]})");
  CHECK(algebra_from_json(plain).dim == 1);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"dim": 2, "basis": ["a","b"], "table": [[[0,0]]]})")),
                  DimensionError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"basis": []})")), ParseError);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"dim": 1, "basis": ["e"], "table": [[["x"]]]})")),
                  ParseError);

  TempDir tmp;
  auto path = tmp.path / "alg.json";
  std::ofstream(path) << j.dump(2);
  CHECK(load_algebra(path).table == alg.table);
  std::ofstream(tmp.path / "bad.json") << "{";
  CHECK_THROWS_AS(load_algebra(tmp.path / "bad.json"), ParseError);
  CHECK_THROWS_AS(load_algebra(tmp.path / "missing.json"), DomainError);
}

TEST_CASE("scan cache stores resumable states") {
  TempDir tmp;
  ScanCache cache(tmp.path);
  std::vector<std::string> warnings;
  auto warn = [&](const std::string& w) { warnings.push_back(w); };
  CHECK_FALSE(cache.get(5, warn).has_value());
  CHECK(warnings.empty());

  IntegerReverter rev(odd_total_series(5, 40));
  rev.extend_to(40);
  cache.put(5, rev.state());
  auto state = cache.get(5, warn);
  REQUIRE(state.has_value());
  CHECK(state->v == rev.state().v);

  // Resuming from the stored state matches a fresh computation.
  IntegerReverter resumed(odd_total_series(5, 60), *state);
  auto r = necessary_koszul_scan(resumed, 5, 60);
  CHECK(r.first_negative == 57);
  CHECK(resumed.series(60) == revert(odd_total_series(5, 60), 60));

  // A state for another n is rejected.
  cache.put(6, rev.state());
  CHECK_FALSE(cache.get(6, warn).has_value());
  CHECK(warnings.size() == 1);

  std::ofstream(cache.entry_path(7)) << "not json";
  CHECK_FALSE(cache.get(7, warn).has_value());
  CHECK(warnings.size() == 2);

  auto j = Json::parse(std::ifstream(cache.entry_path(5)));
  j["version"] = "operadix-scan-0";
  std::ofstream(cache.entry_path(5)) << j.dump();
  CHECK_FALSE(cache.get(5, warn).has_value());
  CHECK(warnings.size() == 3);
  CHECK(warnings.back().find("version") != std::string::npos);

  for (const auto& entry : std::filesystem::directory_iterator(tmp.path)) {
    CHECK(entry.path().string().find(".tmp.") == std::string::npos);
  }
}
