#include <doctest.h>

#include <string>

#include "einstab/error.hpp"
#include "einstab/pipeline.hpp"

using namespace einstab;

namespace {

const std::string kData = EINSTAB_TEST_DATA;

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("single entries") {
    const EntryReport r = run_entry(build(Family::e6_su2_so6));
    CHECK(r.classification == Classification::Degenerate);
    REQUIRE(r.probes.size() == 1);
    CHECK(r.verdict() == Verdict::NotLocalMax);
    CHECK(r.probes[0].matches_expected == true);
    REQUIRE(r.probes[0].witness.has_value());
    CHECK(r.probes[0].witness->improvement > 0);

    const nlohmann::json j = report_to_json(r);
    CHECK(j["probes"][0]["s3"] == "180");
  }

  TEST_CASE("batch order and dedupe") {
    const auto reports = run_batch({{Family::su_n, 5},
                                    {Family::e6_su2_so6, 3},
                                    {Family::su_n, 3},
                                    {Family::su_n, 5},
                                    {Family::e6_su2_so6, 0}});
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].n == 3);
    CHECK(reports[1].n == 5);
    CHECK(reports[2].family == "e6_su2_so6");
    const nlohmann::json j = batch_to_json(reports);
    CHECK(j["count"] == 3);
    CHECK(j["all_not_local_max"] == true);
    CHECK(run_batch({}).empty());
    CHECK_THROWS_AS(run_batch({{Family::su_n, 2}}), RangeError);
  }

  TEST_CASE("matches") {
    CHECK(matches(Number(Rational(180)), Number(Rational(180))));
    CHECK_FALSE(matches(Number(ratio(361, 2)), Number(Rational(180))));
    CHECK(matches(Number(180.00001), Number(Rational(180))));
    CHECK_FALSE(matches(Number(180.1), Number(180.0)));
  }

  TEST_CASE("custom files") {
    const auto e6 = run_custom(kData + "/e6.json");
    REQUIRE(e6.size() == 1);
    CHECK(e6[0].verdict() == Verdict::NotLocalMax);

    const auto su3 = run_custom(kData + "/su3_bare.json", std::nullopt, true);
    REQUIRE_FALSE(su3.empty());
    CHECK(su3[0].classification == Classification::Degenerate);
    CHECK(su3[0].verdict() == Verdict::NotLocalMax);

    // the only critical point of a bracket-free space is a minimum: nothing to probe
    const auto flat = run_custom(kData + "/empty_triples.json", std::nullopt, true);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].classification == Classification::Saddle);
    CHECK(flat[0].probes.empty());

    CHECK_THROWS_AS(run_custom(kData + "/bad_rational.json"), ParseError);
  }

  TEST_CASE("structural constant checks") {
    for (const char* name : {"su2", "su3", "so8"}) {
      const ConstantsCheck c = verify_constants(name);
      CAPTURE(name);
      CHECK(c.dims == c.expected_dims);
      CHECK(c.max_deviation < 1e-8);
    }
    CHECK_THROWS_AS(verify_constants("g2"), InvalidArgument);
  }
}
