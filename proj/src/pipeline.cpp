#include "einstab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "einstab/error.hpp"
#include "einstab/io.hpp"
#include "einstab/lie_constants.hpp"

namespace einstab {

using nlohmann::json;

bool EntryReport::not_local_max() const {
  return std::any_of(probes.begin(), probes.end(),
                     [](const ProbeRecord& p) { return p.result.verdict == Verdict::NotLocalMax; });
}

Verdict EntryReport::verdict() const {
  return probes.empty() ? Verdict::Inconclusive : *probes.front().result.verdict;
}

bool matches(const Number& s3, const Number& expected, double rel_tol) {
  const auto* a = std::get_if<Rational>(&s3);
  const auto* b = std::get_if<Rational>(&expected);
  if (a && b) return *a == *b;
  const double x = to_double(s3), y = to_double(expected);
  return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
}

namespace {

ProbeRecord probe_along(const SliceChart& chart, const Coords& base, Coords direction,
                        const std::optional<Number>& expected, const PipelineOptions& options) {
  const CurveSpec curve(base, direction);
  ProbeRecord rec;
  rec.direction = std::move(direction);
  rec.result = directional_derivatives(chart, curve, options.mode);
  rec.result.verdict = inflection_verdict(rec.result, options.verdict);
  if (rec.result.verdict == Verdict::NotLocalMax) rec.witness = improving_offset(chart, curve, rec.result, options.witness_eps);
  if (expected) rec.matches_expected = matches(rec.result.s3, *expected);
  return rec;
}

// Kernel vectors come out of the eigensolver as doubles; when every
// component is a small-denominator rational bit for bit (e.g. (1)), probe
// exactly.
Coords kernel_coords(const std::vector<double>& v) {
  std::vector<Rational> exact;
  for (double x : v) {
    const Rational q = approximate(x, 1000);
    if (q.get_d() != x) return Coords::from_double(v);
    exact.push_back(q);
  }
  return Coords::from_exact(std::move(exact));
}

// Classification, spectrum and kernel at a point; probes are left to callers.
EntryReport examine(const SliceChart& chart, const Coords& point, const PipelineOptions& options) {
  EntryReport rep;
  rep.critical_point = point;
  if (chart.dimension() == 0) {
    rep.classification = Classification::LocalMaxCandidate;
    return rep;
  }
  rep.gradient_norm = gradient_norm(chart, point.approx);
  rep.eigenvalues = hessian_spectrum(chart, point.approx).values;
  rep.classification = classify(chart, point.approx, options.classify);
  if (rep.classification != Classification::NotCritical)
    rep.kernel = kernel_basis(chart, point.approx, options.classify);
  return rep;
}

}  // namespace

EntryReport run_entry(const CatalogEntry& entry, const PipelineOptions& options) {
  EntryReport rep = examine(entry.chart, entry.critical_point, options);
  rep.family = entry.family;
  rep.n = entry.n;
  rep.label = entry.label;
  rep.note = entry.note;
  rep.expected_s3 = entry.expected_s3;
  if (entry.kernel_direction) {
    rep.probes.push_back(probe_along(entry.chart, entry.critical_point, *entry.kernel_direction, entry.expected_s3, options));
  } else {
    for (const auto& v : rep.kernel)
      rep.probes.push_back(probe_along(entry.chart, entry.critical_point, kernel_coords(v), entry.expected_s3, options));
  }
  return rep;
}

std::vector<EntryReport> run_custom(const std::string& path, const std::optional<std::size_t>& eliminate, bool search,
                                    const PipelineOptions& options) {
  SpaceFile file = read_space_file(path);
  if (const auto problems = validate(file.space); !problems.empty()) {
    std::string msg = path + ": invalid space";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InvalidArgument(msg);
  }
  const std::size_t r = file.space.summands();
  const std::size_t e = eliminate.value_or(file.eliminate.value_or(r - 1));
  const SliceChart chart = restrict(file.space, e);
  const std::size_t dim = chart.dimension();
  if (file.critical_point && file.critical_point->size() != dim)
    throw InvalidArgument(path + ": critical_point needs " + std::to_string(dim) + " coordinates");
  if (file.kernel_direction && file.kernel_direction->size() != dim)
    throw InvalidArgument(path + ": kernel_direction needs " + std::to_string(dim) + " coordinates");

  std::vector<Coords> points;
  if (file.critical_point) points.push_back(*file.critical_point);
  if (search || !file.critical_point) {
    SearchOptions so;
    so.classify = options.classify;
    for (auto& cp : find_critical_points(chart, so)) {
      const bool hinted = file.critical_point && std::equal(cp.coords.approx.begin(), cp.coords.approx.end(),
                                                            file.critical_point->approx.begin(), [](double a, double b) {
                                                              return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a));
                                                            });
      if (!hinted) points.push_back(std::move(cp.coords));
    }
  }

  std::vector<EntryReport> out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    EntryReport rep = examine(chart, points[k], options);
    rep.family = "custom";
    rep.label = file.space.name;
    rep.note = "custom space file";
    const bool is_hint = file.critical_point && k == 0;
    if (is_hint) rep.expected_s3 = file.expected_s3;
    if (is_hint && file.kernel_direction) {
      rep.probes.push_back(probe_along(chart, points[k], *file.kernel_direction, rep.expected_s3, options));
    } else if (rep.classification == Classification::Degenerate) {
      for (const auto& v : rep.kernel)
        rep.probes.push_back(probe_along(chart, points[k], kernel_coords(v), rep.expected_s3, options));
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<EntryReport> run_batch(std::vector<BatchRequest> requests, const PipelineOptions& options) {
  for (auto& [family, n] : requests)
    if (!family_info(family).uses_n) n = 0;
  std::sort(requests.begin(), requests.end());
  requests.erase(std::unique(requests.begin(), requests.end()), requests.end());
  std::vector<std::future<EntryReport>> jobs;
  jobs.reserve(requests.size());
  for (const auto& [family, n] : requests)
    jobs.push_back(std::async(std::launch::async, [family, n, &options] { return run_entry(build(family, n), options); }));
  std::vector<EntryReport> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

ConstantsCheck verify_constants(const std::string& algebra) {
  ConstantsCheck check;
  check.algebra = algebra;
  lie::BuiltinAlgebra alg;
  if (algebra == "su2") {
    alg = lie::su(2);
    check.expected_dims = {3};
    check.expected[{0, 0, 0}] = 3;
  } else if (algebra == "su3") {
    alg = lie::su(3);
    const HomogeneousSpace space = su_n_space(3);
    check.expected_dims = space.dims;
    for (const auto& [key, value] : canonical_triples(space)) check.expected[key] = value.get_d();
  } else if (algebra == "so8") {
    alg = lie::so_even(4);
    check.expected_dims.assign(6, 4);
    // blocks p_ab, p_bc, p_ac of a triangle {a, b, c} carry 2/(n-1)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        for (std::size_t c = b + 1; c < 4; ++c)
          check.expected[make_triple_key(lie::so_block_index(4, a, b), lie::so_block_index(4, b, c),
                                         lie::so_block_index(4, a, c))] = 2.0 / 3.0;
  } else {
    throw InvalidArgument("unknown algebra '" + algebra + "' (expected su2, su3 or so8)");
  }
  check.dims = alg.dims;
  check.computed = lie::structural_constants(alg.table, alg.partition).by_multiset();
  if (check.dims != check.expected_dims) check.max_deviation = std::numeric_limits<double>::infinity();
  auto lookup = [](const std::map<TripleKey, double>& m, const TripleKey& k) {
    const auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
  };
  for (const auto& [key, value] : check.computed)
    check.max_deviation = std::max(check.max_deviation, std::abs(value - lookup(check.expected, key)));
  for (const auto& [key, value] : check.expected)
    check.max_deviation = std::max(check.max_deviation, std::abs(value - lookup(check.computed, key)));
  return check;
}

namespace {

json triples_to_json(const std::map<TripleKey, double>& m) {
  json out = json::array();
  for (const auto& [key, value] : m)
    if (value != 0) out.push_back({{"i", key[0]}, {"j", key[1]}, {"k", key[2]}, {"value", value}});
  return out;
}

}  // namespace

json constants_to_json(const ConstantsCheck& c) {
  return {{"algebra", c.algebra},
          {"dims", c.dims},
          {"expected_dims", c.expected_dims},
          {"computed", triples_to_json(c.computed)},
          {"expected", triples_to_json(c.expected)},
          {"max_deviation", std::isfinite(c.max_deviation) ? json(c.max_deviation) : json("inf")}};
}

namespace {

json witness_to_json(const Witness& w) {
  return {{"point", w.point}, {"t", w.t}, {"value", w.value}, {"base_value", w.base_value},
          {"improvement", w.improvement}, {"halvings", w.halvings}};
}

}  // namespace

json report_to_json(const EntryReport& r) {
  json out;
  out["family"] = r.family;
  out["n"] = r.n;
  out["label"] = r.label;
  out["note"] = r.note;
  out["critical_point"] = coords_to_json(r.critical_point);
  out["gradient_norm"] = r.gradient_norm;
  out["classification"] = to_string(r.classification);
  out["eigenvalues"] = r.eigenvalues;
  out["kernel"] = r.kernel;
  out["expected_s3"] = r.expected_s3 ? number_to_json(*r.expected_s3) : json();
  json probes = json::array();
  for (const auto& p : r.probes) {
    json j;
    j["direction"] = coords_to_json(p.direction);
    j["mode"] = p.result.mode == EvalMode::exact ? "exact" : "float";
    j["s1"] = number_to_json(p.result.s1);
    j["s2"] = number_to_json(p.result.s2);
    j["s3"] = number_to_json(p.result.s3);
    j["verdict"] = to_string(*p.result.verdict);
    j["witness"] = p.witness ? witness_to_json(*p.witness) : json();
    j["matches_expected"] = p.matches_expected ? json(*p.matches_expected) : json();
    probes.push_back(std::move(j));
  }
  out["probes"] = std::move(probes);
  out["verdict"] = to_string(r.verdict());
  return out;
}

json batch_to_json(const std::vector<EntryReport>& reports) {
  json records = json::array();
  for (const auto& r : reports) records.push_back(report_to_json(r));
  const bool all = std::all_of(reports.begin(), reports.end(), [](const EntryReport& r) { return r.not_local_max(); });
  return {{"records", std::move(records)}, {"count", reports.size()}, {"all_not_local_max", all}};
}

}  // namespace einstab
