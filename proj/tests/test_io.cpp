#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adsem/io.hpp"

using namespace adsem;
using Catch::Approx;

namespace {

ChargeSet random_charges(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ChargeSet cs;
  for (ChargeId id : kAllCharges) charge_ref(cs, id) = normal(rng);
  return cs;
}

}  // namespace

TEST_CASE("format_g9 canonical form") {
  CHECK(format_g9(0.5) == "0.5");
  CHECK(format_g9(1.207583383) == "1.20758338");
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(-3e-12) == "-3e-12");
}

TEST_CASE("JSON charge file round trip is byte-identical") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ChargeSet values = random_charges(rng);
    const ChargeSet errors = random_charges(rng);
    const std::string emitted = charges_to_json(values, errors).dump(2);
    const ChargeFile parsed = charges_from_json(json::parse(emitted));
    const std::string reemitted = charges_to_json(parsed.values, parsed.errors).dump(2);
    CHECK(emitted == reemitted);
  }
}

TEST_CASE("CSV charge file round trip is byte-identical") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ChargeSet values = random_charges(rng);
    const ChargeSet errors = random_charges(rng);
    const std::string emitted = charges_to_csv(values, errors);
    const ChargeFile parsed = charges_from_csv(emitted);
    CHECK(charges_to_csv(parsed.values, parsed.errors) == emitted);
  }
  CHECK_THROWS_AS(charges_from_csv("bogus\n"), std::invalid_argument);
  CHECK_THROWS_AS(charges_from_csv("charge,value,error\nnope,1,0\n"),
                  std::invalid_argument);
}

TEST_CASE("JSON field names match the charge file contract") {
  ChargeSet values;
  values.E0 = 1.5;
  values.c_prime(1) = -0.25;
  const json j = charges_to_json(values, ChargeSet{});
  CHECK(j.contains("E0"));
  CHECK(j.contains("c"));
  CHECK(j.contains("c_prime"));
  CHECK(j.contains("J"));
  CHECK(j.contains("q"));
  CHECK(j.contains("b0"));
  CHECK(j.contains("b"));
  CHECK(j.contains("errors"));
  CHECK(j["E0"].get<double>() == 1.5);
  CHECK(j["c_prime"][1].get<double>() == -0.25);
}

TEST_CASE("bound report JSON") {
  ChargeSet cs;
  cs.E0 = 1.207583;
  cs.J(2) = 0.362275;
  cs.q = 0.219780;
  cs.b(2) = 0.087912;
  const json j = bound_report_to_json(cs);
  CHECK(j["psd"].get<bool>());
  CHECK(j["satisfies_bound"].get<bool>());
  CHECK(j["branches"].size() == 4);
  CHECK(j["E0"].get<double>() == Approx(1.207583));
  CHECK(j["active_branch"].get<int>() >= 1);
  CHECK(j["active_branch"].get<int>() <= 4);
}
