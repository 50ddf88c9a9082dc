// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "einstab/catalog.hpp"
#include "einstab/flow.hpp"
#include "einstab/lie_constants.hpp"
#include "einstab/pipeline.hpp"
#include "einstab/probe.hpp"
#include "einstab/slice.hpp"

using namespace einstab;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs fn and fails the check if it throws or exceeds the time limit.
void timed(Check& c, const std::string& what, double limit, const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const std::exception& e) {
    c.require(false, what + ": " + e.what());
    return;
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < limit, what + " took " + std::to_string(elapsed) + " s");
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (int n = 3; n <= 10; ++n) out.push_back(build(Family::su_n, n));
  for (int n = 3; n <= 6; ++n) out.push_back(build(Family::su2n_mod_spn, n));
  for (int n = 4; n <= 8; ++n) out.push_back(build(Family::so2n_flag, n));
  out.push_back(build(Family::e6_su2_so6));
  return out;
}

CurveSpec curve_of(const CatalogEntry& e) { return CurveSpec(e.critical_point, *e.kernel_direction); }

const Rational& exact(const Number& x) { return std::get<Rational>(x); }

Check criterion1() {
  Check c;
  timed(c, "E6", 1.0, [&] {
    const EntryReport r = run_entry(build(Family::e6_su2_so6), {.mode = ProbeMode::exact});
    c.require(r.probes.size() == 1, "expected one probe");
    const ProbeResult& p = r.probes.at(0).result;
    c.require(p.mode == EvalMode::exact, "not exact");
    c.require(exact(p.s1) == 0 && exact(p.s2) == 0 && exact(p.s3) == 180,
              "S = (" + to_string(p.s1) + ", " + to_string(p.s2) + ", " + to_string(p.s3) + ")");
    c.require(*p.verdict == Verdict::NotLocalMax, "verdict");
  });
  return c;
}

Check criterion2() {
  Check c;
  for (int n = 3; n <= 10; ++n) {
    const std::string tag = "SU(" + std::to_string(n) + ")";
    timed(c, tag, 1.0, [&] {
      const CatalogEntry e = build(Family::su_n, n);
      const ProbeResult p = directional_derivatives(e.chart, curve_of(e), ProbeMode::exact);
      c.require(exact(p.s1) == 0 && exact(p.s2) == 0, tag + ": S1, S2 nonzero");
      c.require(exact(p.s3) == ratio(static_cast<long>(n) * n * (n - 1), static_cast<long>(n - 2) * (n - 2)),
                tag + ": S3 = " + to_string(p.s3));
      // exact Hessian at (1, 1) applied to (-2/(n-2), 1)
      const std::vector<Rational> one{1, 1};
      const std::vector<Rational> v{ratio(-2, n - 2), Rational(1)};
      for (std::size_t i = 0; i < 2; ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < 2; ++j) row += e.chart.reduced.partial(i).partial(j).eval_exact(one) * v[j];
        c.require(row == 0, tag + ": H v != 0");
      }
    });
  }
  return c;
}

Check criterion3() {
  Check c;
  for (int n = 4; n <= 8; ++n) {
    const std::string tag = "SO(" + std::to_string(2 * n) + ")";
    timed(c, tag, 1.0, [&] {
      const CatalogEntry e = build(Family::so2n_flag, n);
      const ProbeResult p = directional_derivatives(e.chart, curve_of(e), ProbeMode::exact);
      c.require(exact(p.s1) == 0 && exact(p.s2) == 0, tag + ": S1, S2 nonzero");
      c.require(exact(p.s3) == ratio(2L * n * n * (n - 1), static_cast<long>(n - 2) * (n - 2)),
                tag + ": S3 = " + to_string(p.s3));
      // 2(n-1)/x + (n-1)(n-2)/(2y) - (n-2)/2 * y/x^2
      const Signomial display = Signomial::term(2, Rational(2 * (n - 1)), {{0, Rational(-1)}}) +
                                Signomial::term(2, ratio((n - 1) * (n - 2), 2), {{1, Rational(-1)}}) +
                                Signomial::term(2, ratio(-(n - 2), 2), {{0, Rational(-2)}, {1, Rational(1)}});
      c.require(scalar_curvature(collapsed_so2n_space(n)) == display, tag + ": collapsed scal differs from display");
    });
  }
  return c;
}

Check criterion4() {
  Check c;
  for (int n = 3; n <= 6; ++n) {
    const std::string tag = "SU(" + std::to_string(2 * n) + ")/Sp(" + std::to_string(n) + ")";
    timed(c, tag, 1.0, [&] {
      const double a = std::pow(16.0 * n / ((2.0 * n - 1) * std::pow(16.0, n)), 1.0 / (n + 1.0 - 2.0 * n * n));
      const CatalogEntry e = build(Family::su2n_mod_spn, n);
      c.require(std::abs(e.critical_point.approx[0] - a) <= 1e-14 * a &&
                    std::abs(e.critical_point.approx[1] - a / 2) <= 1e-14 * a,
                tag + ": base point is not (a, a/2)");
      const EntryReport r = run_entry(e, {.mode = ProbeMode::floating});
      const ProbeResult& p = r.probes.at(0).result;
      const double scale = std::max(std::abs(to_double(p.s3)), p.third_partial_scale);
      c.require(std::abs(to_double(p.s1)) < 1e-8 * scale && std::abs(to_double(p.s2)) < 1e-8 * scale,
                tag + ": S1/S2 not small");
      const double expected = -2.0 * n * n * (n - 2) * (2 * n - 1) * (n - 1) / std::pow(a, 4);
      c.require(std::abs(to_double(p.s3) - expected) <= 1e-6 * std::abs(expected),
                tag + ": S3 = " + to_string(p.s3));
      c.require(*p.verdict == Verdict::NotLocalMax, tag + ": verdict");
    });
  }
  return c;
}

Check criterion5() {
  Check c;
  timed(c, "structural constants", 10.0, [&] {
    const auto su3 = lie::su(3);
    c.require(su3.dims == std::vector<long>{3, 4, 1}, "su(3) dims");
    const auto m = lie::structural_constants(su3.table, su3.partition).by_multiset();
    c.require(std::abs(m.at({0, 0, 0}) - 2) < 1e-8 && std::abs(m.at({0, 1, 1}) - 1) < 1e-8 &&
                  std::abs(m.at({1, 1, 2}) - 1) < 1e-8,
              "su(3) constants");
    for (const auto& [key, v] : m)
      if (key != TripleKey{0, 0, 0} && key != TripleKey{0, 1, 1} && key != TripleKey{1, 1, 2})
        c.require(std::abs(v) < 1e-8, "su(3) has a spurious constant");

    const auto so8 = lie::so_even(4);
    const auto s = lie::structural_constants(so8.table, so8.partition).by_multiset();
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        for (std::size_t d = b + 1; d < 4; ++d) {
          const TripleKey k =
              make_triple_key(lie::so_block_index(4, a, b), lie::so_block_index(4, b, d), lie::so_block_index(4, a, d));
          c.require(std::abs(s.at(k) - 2.0 / 3.0) < 1e-8, "so(8) block constant");
        }
  });
  return c;
}

// Random space with r summands, restricted to its unit-volume chart.
SliceChart random_chart(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> summands(2, 4), dim(1, 12), value(1, 24);
  HomogeneousSpace s;
  s.name = "random";
  const int r = summands(rng);
  for (int k = 0; k < r; ++k) {
    s.dims.push_back(dim(rng));
    s.b.push_back(1);
  }
  std::uniform_int_distribution<std::size_t> index(0, r - 1);
  std::vector<TripleKey> seen;
  for (int t = 0; t < 4; ++t) {
    const std::size_t i = index(rng), j = index(rng), k = index(rng);
    const TripleKey key = make_triple_key(i, j, k);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    s.triples.push_back({i, j, k, ratio(value(rng), 4)});
  }
  return restrict(s, r - 1);
}

Check criterion6() {
  Check c;
  auto agrees = [](const FiniteDifferences& fd, const ProbeResult& r, double floor) {
    auto ok = [&](double approx, double exact_value, double magnitude, double tol) {
      return std::abs(approx - exact_value) <= tol * std::max(std::abs(exact_value), magnitude) + floor;
    };
    return ok(fd.s1, to_double(r.s1), r.magnitude1, 1e-6) && ok(fd.s2, to_double(r.s2), r.magnitude2, 1e-6) &&
           ok(fd.s3, to_double(r.s3), r.magnitude3, 1e-4);
  };
  timed(c, "derivative oracle", 60.0, [&] {
    for (const auto& e : catalog()) {
      const CurveSpec curve = curve_of(e);
      c.require(agrees(fd_check_extrapolated(e.chart, curve), directional_derivatives(e.chart, curve), 0.0),
                e.label + ": differences disagree");
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(0.5, 2.0), dir(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const SliceChart chart = random_chart(rng);
      std::vector<double> base, v;
      for (std::size_t i = 0; i < chart.dimension(); ++i) {
        base.push_back(coord(rng));
        v.push_back(dir(rng));
      }
      const CurveSpec curve(Coords::from_double(base), Coords::from_double(v));
      const ProbeResult r = directional_derivatives(chart, curve, ProbeMode::floating);
      // vanishing contractions are compared against the rounding level of f
      c.require(agrees(fd_check_extrapolated(chart, curve), r, 1e-9 * chart.reduced.magnitude(base)),
                "random triple " + std::to_string(trial) + ": differences disagree");
    }
  });
  return c;
}

Check criterion7() {
  Check c;
  timed(c, "witnesses", 60.0, [&] {
    for (const auto& e : catalog()) {
      const CurveSpec curve = curve_of(e);
      ProbeResult r = directional_derivatives(e.chart, curve);
      r.verdict = inflection_verdict(r);
      const Witness w = improving_offset(e.chart, curve, r);
      const double at_witness = e.chart.reduced.eval(w.point);
      const double at_base = e.chart.reduced.eval(e.critical_point.approx);
      c.require(at_witness > at_base, e.label + ": witness does not improve scal");
    }
  });
  return c;
}

Check criterion8() {
  Check c;
  timed(c, "flow", 120.0, [&] {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (const auto& e : catalog()) {
      for (int k = 0; k < 10; ++k) {
        std::vector<double> start = e.critical_point.approx;
        std::vector<double> dir(start.size());
        double norm = 0;
        for (double& d : dir) norm += (d = gauss(rng)) * d;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < start.size(); ++i) start[i] += 1e-2 * dir[i] / norm;
        FlowOptions o;
        o.step = 1e-3;
        o.max_steps = 400;
        const Trajectory traj = integrate_ascent(e.chart, start, o);
        // re-evaluate scal independently of the integrator's bookkeeping
        double previous = e.chart.reduced.eval(traj.samples.front().point);
        for (std::size_t s = 1; s < traj.samples.size(); ++s) {
          const double value = e.chart.reduced.eval(traj.samples[s].point);
          c.require(value >= previous - 1e-10, e.label + ": scal decreased along the flow");
          previous = value;
        }
      }
    }
  });
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check (*)()>> criteria{
      {"E6/SU(2)xSO(6): exact (0, 0, 180), NotLocalMax", criterion1},
      {"SU(n), n = 3..10: exact S3 closed form and exact Hessian kernel", criterion2},
      {"SO(2n)/T^n, n = 4..8: exact S3 closed form and collapsed scal", criterion3},
      {"SU(2n)/Sp(n), n = 3..6: float probe at (a, a/2)", criterion4},
      {"structural constants of su(3) and so(8)", criterion5},
      {"finite differences agree with exact contractions", criterion6},
      {"witnesses improve scal on every catalog entry", criterion7},
      {"gradient flow is monotone", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Check c = criteria[i].second();
    std::printf("%s %zu: %s%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.ok ? "" : " -- ",
                c.detail.c_str());
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
