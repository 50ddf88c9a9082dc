#include "einstab/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "einstab/error.hpp"
#include "einstab/io.hpp"

namespace einstab {

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> table = {
      {Family::su_n, "su_n", "SU(n) with the Killing metric", 3, true},
      {Family::su2n_mod_spn, "su2n_mod_spn", "SU(2n)/Sp(n) with the symmetric metric", 3, true},
      {Family::so2n_flag, "so2n_flag", "SO(2n)/T^n with the standard metric", 4, true},
      {Family::e6_su2_so6, "e6_su2_so6", "E6/SU(2)xSO(6) with the standard metric", 0, false},
  };
  return table;
}

const FamilyInfo& family_info(Family family) {
  for (const auto& info : families())
    if (info.id == family) return info;
  throw InvalidArgument("unknown family");
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& info : families())
    if (name == info.name) return info.id;
  return std::nullopt;
}

namespace {

void require_range(Family family, int n) {
  const FamilyInfo& info = family_info(family);
  if (info.uses_n && n < info.min_n)
    throw RangeError(std::string(info.name) + " requires n >= " + std::to_string(info.min_n) + ", got " +
                     std::to_string(n));
}

std::vector<Rational> ones(std::size_t r) { return std::vector<Rational>(r, Rational(1)); }

}  // namespace

HomogeneousSpace su_n_space(int n) {
  require_range(Family::su_n, n);
  const long m = n - 1;
  HomogeneousSpace space;
  space.name = "SU(" + std::to_string(n) + ")";
  space.dims = {m * m - 1, 2 * m, 1};
  space.b = ones(3);
  space.triples = {{0, 0, 0, Rational(m * (m - 1))}, {0, 1, 1, Rational(m - 1)}, {1, 1, 2, Rational(1)}};
  return space;
}

HomogeneousSpace e6_space() {
  HomogeneousSpace space;
  space.name = "E6/SU(2)xSO(6)";
  space.dims = {20, 40};
  space.b = ones(2);
  space.triples = {{0, 1, 1, Rational(10)}};
  return space;
}

TripleMap collapsed_so2n_constants(int n) {
  require_range(Family::so2n_flag, n);
  // Each block p_ij brackets into the blocks sharing one index with it; the
  // block constant is 2/(n-1) in the normalization Q = -Killing.
  TripleMap map;
  map[{0, 0, 1}] = Rational(2 * (n - 2));
  if (n > 3) map[{1, 1, 1}] = Rational(2 * (n - 2) * (n - 3));
  return map;
}

HomogeneousSpace collapsed_so2n_space(int n) {
  HomogeneousSpace space;
  space.name = "SO(" + std::to_string(2 * n) + ")/T^" + std::to_string(n);
  space.dims = {4L * (n - 1), 2L * (n - 1) * (n - 2)};
  space.b = ones(2);
  for (const auto& [key, value] : collapsed_so2n_constants(n))
    if (value != 0) space.triples.push_back({key[0], key[1], key[2], value});
  return space;
}

double su2n_normalizer(int n) {
  require_range(Family::su2n_mod_spn, n);
  const double nn = n;
  const double base = 16.0 * nn / ((2 * nn - 1) * std::pow(16.0, nn));
  return std::pow(base, 1.0 / (nn + 1 - 2 * nn * nn));
}

Signomial su2n_reduced_scal(int n) {
  require_range(Family::su2n_mod_spn, n);
  const Rational c(2 * n - 1);
  const long d1 = static_cast<long>(2 * n - 1) * (n - 2);
  Signomial f(2);
  f += Signomial::term(2, c * 4 * (n - 1) * (n - 2), {{0, Rational(-1)}});
  f += Signomial::term(2, c * 8 * (n - 1), {{1, Rational(-1)}});
  f += Signomial::term(2, -c * (n - 2), {{0, Rational(1)}, {1, Rational(-2)}});
  f += Signomial::term(2, -c, {{0, Rational(-d1)}, {1, Rational(-(4 * n - 2))}});
  return f;
}

CatalogEntry build(Family family, int n) {
  require_range(family, n);
  CatalogEntry e;
  e.family = family_info(family).name;
  e.n = family_info(family).uses_n ? n : 0;
  switch (family) {
    case Family::su_n: {
      e.space = su_n_space(n);
      e.label = e.space->name;
      e.chart = restrict(*e.space, 2);
      e.critical_point = Coords::from_exact({Rational(1), Rational(1)});
      e.kernel_direction = Coords::from_exact({ratio(-2, n - 2), Rational(1)});
      e.expected_s3 = ratio(static_cast<long>(n) * n * (n - 1), static_cast<long>(n - 2) * (n - 2));
      e.note = "Killing metric at (1,1); curve along the Hessian kernel";
      break;
    }
    case Family::su2n_mod_spn: {
      e.label = "SU(" + std::to_string(2 * n) + ")/Sp(" + std::to_string(n) + ")";
      const long d1 = static_cast<long>(2 * n - 1) * (n - 2);
      const long d2 = 4L * (n - 1);
      e.chart = reduced_chart(e.label, su2n_reduced_scal(n), 2,
                              Monomial({{0, Rational(-d1)}, {1, Rational(-d2)}}));
      const double a = su2n_normalizer(n);
      e.critical_point = Coords::from_double({a, a / 2});
      e.kernel_direction = Coords::from_exact({Rational(1), ratio(-(n - 2), 4)});
      const double nn = n;
      e.expected_s3 = -2 * nn * nn * (nn - 2) * (2 * nn - 1) * (nn - 1) / std::pow(a, 4);
      e.note = "symmetric metric (a, a/2) in reduced form; z eliminated by volume";
      break;
    }
    case Family::so2n_flag: {
      e.space = collapsed_so2n_space(n);
      e.label = e.space->name;
      e.chart = restrict(*e.space, 1);
      e.critical_point = Coords::from_exact({Rational(1)});
      e.kernel_direction = Coords::from_exact({Rational(1)});
      e.expected_s3 = ratio(2L * n * n * (n - 1), static_cast<long>(n - 2) * (n - 2));
      e.note = "standard metric on the collapsed two-parameter family";
      break;
    }
    case Family::e6_su2_so6: {
      e.space = e6_space();
      e.label = e.space->name;
      e.chart = restrict(*e.space, 0);
      e.critical_point = Coords::from_exact({Rational(1)});
      e.kernel_direction = Coords::from_exact({Rational(1)});
      e.expected_s3 = Rational(180);
      e.note = "standard metric; one-parameter slice";
      break;
    }
  }
  return e;
}

CatalogEntry load_custom(const std::string& path) {
  SpaceFile file = read_space_file(path);
  if (const auto problems = validate(file.space); !problems.empty()) {
    std::string msg = path + ": invalid space";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InvalidArgument(msg);
  }
  CatalogEntry e;
  e.family = "custom";
  e.label = file.space.name;
  const std::size_t r = file.space.summands();
  e.chart = restrict(file.space, file.eliminate.value_or(r - 1));
  e.space = std::move(file.space);
  e.expected_s3 = file.expected_s3;
  e.note = "custom space file";

  const std::size_t dim = e.chart.dimension();
  if (file.critical_point) {
    if (file.critical_point->size() != dim)
      throw InvalidArgument(path + ": critical_point needs " + std::to_string(dim) + " coordinates");
    e.critical_point = *file.critical_point;
  } else {
    const auto found = find_critical_points(e.chart);
    if (found.empty()) throw DomainError(path + ": no critical points found");
    auto pick = std::find_if(found.begin(), found.end(),
                             [](const CriticalPoint& p) { return p.label == Classification::Degenerate; });
    e.critical_point = (pick == found.end() ? found.front() : *pick).coords;
  }
  if (file.kernel_direction) {
    if (file.kernel_direction->size() != dim)
      throw InvalidArgument(path + ": kernel_direction needs " + std::to_string(dim) + " coordinates");
    e.kernel_direction = *file.kernel_direction;
  } else if (ClassifyOptions loose{.gradient_tol = 1e-8};
             dim > 0 && is_critical(e.chart, e.critical_point.approx, loose.gradient_tol)) {
    const auto kernel = kernel_basis(e.chart, e.critical_point.approx, loose);
    if (kernel.size() == 1) e.kernel_direction = Coords::from_double(kernel.front());
  }
  return e;
}

}  // namespace einstab
