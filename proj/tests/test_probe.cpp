#include <doctest.h>

#include <cmath>

#include "einstab/catalog.hpp"
#include "einstab/error.hpp"
#include "einstab/probe.hpp"
#include "support.hpp"

using namespace einstab;
using namespace einstab::testing;

namespace {

CurveSpec curve_of(const CatalogEntry& e) { return CurveSpec(e.critical_point, *e.kernel_direction); }

ProbeResult exact_result(Rational s1, Rational s2, Rational s3) {
  ProbeResult r;
  r.s1 = s1;
  r.s2 = s2;
  r.s3 = s3;
  r.mode = EvalMode::exact;
  return r;
}

ProbeResult float_result(double s1, double s2, double s3, double scale) {
  ProbeResult r;
  r.s1 = s1;
  r.s2 = s2;
  r.s3 = s3;
  r.third_partial_scale = scale;
  return r;
}

}  // namespace

TEST_SUITE("probe") {
  TEST_CASE("E6 along the slice") {
    const CatalogEntry e = build(Family::e6_su2_so6);
    const ProbeResult r = directional_derivatives(e.chart, curve_of(e));
    REQUIRE(r.mode == EvalMode::exact);
    CHECK(std::get<Rational>(r.s1) == 0);
    CHECK(std::get<Rational>(r.s2) == 0);
    CHECK(std::get<Rational>(r.s3) == 180);
    CHECK(inflection_verdict(r) == Verdict::NotLocalMax);
  }

  TEST_CASE("SU(n) closed form") {
    for (int n = 3; n <= 10; ++n) {
      const CatalogEntry e = build(Family::su_n, n);
      const ProbeResult r = directional_derivatives(e.chart, curve_of(e), ProbeMode::exact);
      CHECK(std::get<Rational>(r.s1) == 0);
      CHECK(std::get<Rational>(r.s2) == 0);
      CHECK(std::get<Rational>(r.s3) == ratio(n * n * (n - 1), (n - 2) * (n - 2)));
    }
  }

  TEST_CASE("verdicts") {
    CHECK(inflection_verdict(exact_result(0, -3, 5)) == Verdict::StrictDescent);
    CHECK(inflection_verdict(exact_result(0, 0, 0)) == Verdict::Inconclusive);
    CHECK(inflection_verdict(exact_result(0, 0, -2)) == Verdict::NotLocalMax);
    CHECK(inflection_verdict(exact_result(1, 0, 5)) == Verdict::Inconclusive);
    CHECK(inflection_verdict(exact_result(0, 2, 5)) == Verdict::Inconclusive);

    CHECK(inflection_verdict(float_result(1e-12, -1e-11, 180, 180)) == Verdict::NotLocalMax);
    CHECK(inflection_verdict(float_result(0, 0, 1e-9, 10)) == Verdict::Inconclusive);
    CHECK(inflection_verdict(float_result(0, -1, 0, 10)) == Verdict::StrictDescent);
    CHECK(inflection_verdict(float_result(1e-3, 0, 10, 10)) == Verdict::Inconclusive);
    CHECK(inflection_verdict(float_result(0, 0, 0, 0)) == Verdict::Inconclusive);
    CHECK(inflection_verdict(float_result(1e-6, 0, 10, 10), {.tol_low = 1e-5}) == Verdict::NotLocalMax);
  }

  TEST_CASE("scaling the direction by c scales S_k by c^k") {
    const CatalogEntry e = build(Family::su_n, 5);
    const ProbeResult base = directional_derivatives(e.chart, curve_of(e), ProbeMode::exact);
    for (const Rational c : {ratio(3, 2), ratio(-2, 1), ratio(1, 7)}) {
      std::vector<Rational> v = *e.kernel_direction->exact;
      for (auto& x : v) x *= c;
      const ProbeResult r =
          directional_derivatives(e.chart, CurveSpec(e.critical_point, Coords::from_exact(v)), ProbeMode::exact);
      CHECK(std::get<Rational>(r.s3) == c * c * c * std::get<Rational>(base.s3));
    }
  }

  TEST_CASE("plain stencils on the E6 and SO(8) curves") {
    for (const CatalogEntry& e : {build(Family::e6_su2_so6), build(Family::so2n_flag, 4)}) {
      const FiniteDifferences fd = fd_check(e.chart, curve_of(e));
      CHECK(close(fd.s3, to_double(*e.expected_s3), 1e-4));
      CHECK(std::abs(fd.s1) < 1e-4);
    }
    const SliceChart flat = reduced_chart("constant", Signomial::constant(1, 7), 1, Monomial());
    const FiniteDifferences zero = fd_check(flat, CurveSpec(Coords::from_exact({1}), Coords::from_exact({1})));
    CHECK(std::abs(zero.s1) < 1e-10);
    CHECK(std::abs(zero.s3) < 1e-3);
    CHECK_THROWS_AS(fd_check(flat, CurveSpec(Coords::from_exact({1}), Coords::from_exact({1})), 0.5), DomainError);
  }

  TEST_CASE("extrapolated differences agree on the catalog") {
    std::vector<CatalogEntry> entries;
    for (int n = 3; n <= 10; ++n) entries.push_back(build(Family::su_n, n));
    for (int n = 4; n <= 8; ++n) entries.push_back(build(Family::so2n_flag, n));
    for (int n = 3; n <= 6; ++n) entries.push_back(build(Family::su2n_mod_spn, n));
    entries.push_back(build(Family::e6_su2_so6));
    for (const auto& e : entries) {
      CAPTURE(e.label);
      const CurveSpec c = curve_of(e);
      const ProbeResult r = directional_derivatives(e.chart, c);
      CHECK(fd_agrees(fd_check_extrapolated(e.chart, c), r, 0.0));
    }
  }

  TEST_CASE("extrapolated differences agree on random signomials") {
    for (int trial = 0; trial < 100; ++trial) {
      const Signomial f = random_signomial(2, 4);
      const SliceChart chart = reduced_chart("random", f, 2, Monomial());
      const std::vector<double> base{uniform(0.5, 2), uniform(0.5, 2)};
      const std::vector<double> dir{uniform(-1, 1), uniform(-1, 1)};
      if (std::hypot(dir[0], dir[1]) < 0.1) continue;
      const CurveSpec c(Coords::from_double(base), Coords::from_double(dir));
      const ProbeResult r = directional_derivatives(chart, c, ProbeMode::floating);
      CAPTURE(f.to_string());
      CHECK(fd_agrees(fd_check_extrapolated(chart, c), r, 1e-9 * f.magnitude(base)));
    }
  }

  TEST_CASE("witness") {
    const CatalogEntry e6 = build(Family::e6_su2_so6);
    const CurveSpec c6 = curve_of(e6);
    ProbeResult r6 = directional_derivatives(e6.chart, c6);
    const Witness w = improving_offset(e6.chart, c6, r6);
    CHECK(w.t > 0);
    CHECK(w.improvement > 0);
    CHECK(w.improvement == doctest::Approx(2.93368e-5).epsilon(1e-4));

    const CatalogEntry sp = build(Family::su2n_mod_spn, 4);
    const CurveSpec csp = curve_of(sp);
    const ProbeResult rsp = directional_derivatives(sp.chart, csp);
    REQUIRE(to_double(rsp.s3) < 0);
    const Witness wsp = improving_offset(sp.chart, csp, rsp);
    CHECK(wsp.t < 0);
    CHECK(wsp.value > wsp.base_value);

    CHECK_THROWS_AS(improving_offset(e6.chart, c6, exact_result(0, -3, 5)), InvalidArgument);
  }

  TEST_CASE("bad curves") {
    CHECK_THROWS_AS(CurveSpec(Coords::from_exact({1}), Coords::from_exact({0})), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec(Coords::from_exact({1}), Coords::from_exact({1, 1})), InvalidArgument);
    CHECK_THROWS_AS(CurveSpec(Coords::from_exact({-1}), Coords::from_exact({1})), DomainError);
    const CatalogEntry e6 = build(Family::e6_su2_so6);
    const CurveSpec near_wall(Coords::from_double({1e-3}), Coords::from_exact({1}));
    CHECK_THROWS_AS(directional_derivatives(e6.chart, near_wall), DomainError);
    // irrational power at the base point forces float evaluation
    const CatalogEntry sp = build(Family::su2n_mod_spn, 3);
    CHECK_THROWS_AS(directional_derivatives(sp.chart, curve_of(sp), ProbeMode::exact), DomainError);
    CHECK(directional_derivatives(sp.chart, curve_of(sp)).mode == EvalMode::floating);
  }
}
