#include "einstab/slice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "einstab/error.hpp"

namespace einstab {

Coords Coords::from_exact(std::vector<Rational> values) {
  Coords c;
  c.approx.reserve(values.size());
  for (const auto& v : values) c.approx.push_back(v.get_d());
  c.exact = std::move(values);
  return c;
}

Coords Coords::from_double(std::vector<double> values) {
  Coords c;
  c.approx = std::move(values);
  return c;
}

// ------------------------------------------------------------------ charts

std::vector<double> SliceChart::inflate(std::span<const double> point) const {
  if (point.size() != dimension()) throw InvalidArgument("inflate: point has the wrong dimension");
  std::vector<double> full(parent_arity);
  for (std::size_t c = 0; c < retained.size(); ++c) full[retained[c]] = point[c];
  full[eliminated] = Signomial::term(dimension(), 1, eliminated_value).eval(point);
  return full;
}

std::optional<std::vector<Rational>> SliceChart::inflate_exact(std::span<const Rational> point) const {
  if (point.size() != dimension()) throw InvalidArgument("inflate: point has the wrong dimension");
  const Signomial value = Signomial::term(dimension(), 1, eliminated_value);
  if (!value.exactly_evaluable(point)) return std::nullopt;
  std::vector<Rational> full(parent_arity);
  for (std::size_t c = 0; c < retained.size(); ++c) full[retained[c]] = point[c];
  full[eliminated] = value.eval_exact(point);
  return full;
}

SliceChart restrict(const HomogeneousSpace& space, std::size_t eliminated) {
  const Signomial scal = scalar_curvature(space);
  const std::size_t r = space.summands();
  if (eliminated >= r)
    throw InvalidArgument("cannot eliminate summand " + std::to_string(eliminated) + " of " + std::to_string(r));

  const Rational d_e(space.dims[eliminated]);
  Monomial::Exponents parent_exps;
  Monomial::Exponents chart_exps;
  SliceChart chart;
  chart.label = space.name;
  chart.parent_arity = r;
  chart.eliminated = eliminated;
  for (std::size_t k = 0; k < r; ++k) {
    if (k == eliminated) continue;
    const Rational e = -Rational(space.dims[k]) / d_e;
    parent_exps.emplace(k, e);
    chart_exps.emplace(chart.retained.size(), e);
    chart.retained.push_back(k);
  }
  chart.eliminated_value = Monomial(std::move(chart_exps));
  chart.reduced = scal.substitute_monomial(eliminated, 1, Monomial(std::move(parent_exps))).drop_variable(eliminated);
  return chart;
}

SliceChart reduced_chart(std::string label, Signomial reduced, std::size_t eliminated, Monomial eliminated_value) {
  const std::size_t dim = reduced.arity();
  if (eliminated > dim) throw InvalidArgument("eliminated index beyond the parent arity");
  if (eliminated_value.min_arity() > dim) throw InvalidArgument("eliminated value mentions unknown chart coordinates");
  SliceChart chart;
  chart.label = std::move(label);
  chart.parent_arity = dim + 1;
  chart.eliminated = eliminated;
  for (std::size_t k = 0; k <= dim; ++k)
    if (k != eliminated) chart.retained.push_back(k);
  chart.eliminated_value = std::move(eliminated_value);
  chart.reduced = std::move(reduced);
  return chart;
}

// --------------------------------------------------------------- evaluator

namespace {

Signomial abs_coefficients(const Signomial& f) {
  Signomial out(f.arity());
  for (const auto& [m, c] : f.terms()) out += Signomial::term(f.arity(), abs(c), m);
  return out;
}

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool positive(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x > 0 && std::isfinite(x); });
}

}  // namespace

ChartEvaluator::ChartEvaluator(const SliceChart& chart) : value_(chart.reduced) {
  const std::size_t n = chart.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    const Signomial gi = chart.reduced.partial(i);
    gradient_.emplace_back(gi);
    gradient_abs_.emplace_back(abs_coefficients(gi));
    std::vector<FloatSignomial> row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(gi.partial(j));
    hessian_.push_back(std::move(row));
  }
}

std::vector<double> ChartEvaluator::gradient(std::span<const double> point) const {
  std::vector<double> g;
  g.reserve(gradient_.size());
  for (const auto& gi : gradient_) g.push_back(gi(point));
  return g;
}

SquareMatrix ChartEvaluator::hessian(std::span<const double> point) const {
  const std::size_t n = hessian_.size();
  SquareMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = hessian_[i][j](point);
  return h;
}

double ChartEvaluator::gradient_scale(std::span<const double> point) const {
  double s = 0;
  for (const auto& gi : gradient_abs_) {
    const double v = gi(point);
    s += v * v;
  }
  return std::sqrt(s);
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::NotCritical: return "NotCritical";
    case Classification::LocalMaxCandidate: return "LocalMaxCandidate";
    case Classification::Saddle: return "Saddle";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

double gradient_norm(const SliceChart& chart, std::span<const double> point) {
  return norm2(ChartEvaluator(chart).gradient(point));
}

namespace {

bool converged(const ChartEvaluator& eval, std::span<const double> point, double tol, double* norm_out = nullptr) {
  const double gn = norm2(eval.gradient(point));
  if (norm_out) *norm_out = gn;
  return gn <= tol * std::max(1.0, eval.gradient_scale(point));
}

// Gaussian elimination with partial pivoting; std::nullopt when singular.
std::optional<std::vector<double>> solve(SquareMatrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  const double scale = a.max_abs();
  if (scale == 0) return std::nullopt;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-14 * scale) return std::nullopt;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(col, k));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

// Small-denominator rational candidate for a converged float point, kept only
// if the exact gradient vanishes there.
std::optional<std::vector<Rational>> snap_exact(const SliceChart& chart, std::span<const double> point) {
  std::vector<Rational> cand;
  for (double x : point) {
    Rational q = approximate(x, 1000);
    if (q <= 0 || std::abs(q.get_d() - x) > 1e-6 * std::max(1.0, std::abs(x))) return std::nullopt;
    cand.push_back(q);
  }
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    const Signomial gi = chart.reduced.partial(i);
    if (!gi.exactly_evaluable(cand) || gi.eval_exact(cand) != 0) return std::nullopt;
  }
  return cand;
}

}  // namespace

bool is_critical(const SliceChart& chart, std::span<const double> point, double tol) {
  return converged(ChartEvaluator(chart), point, tol);
}

CriticalPoint newton_critical(const SliceChart& chart, std::vector<double> start, const NewtonOptions& options,
                              const ClassifyOptions& classify_options) {
  const std::size_t n = chart.dimension();
  if (start.size() != n) throw InvalidArgument("newton: start has the wrong dimension");
  if (!positive(start)) throw DomainError("newton: start must be strictly positive");
  const ChartEvaluator eval(chart);

  std::vector<double> u = std::move(start);
  double gn = 0;
  int iter = 0;
  for (;; ++iter) {
    if (converged(eval, u, options.tol, &gn)) break;
    if (iter >= options.max_iter)
      throw ConvergenceError("newton: no convergence after " + std::to_string(options.max_iter) +
                             " iterations (gradient norm " + std::to_string(gn) + ")");
    const std::vector<double> g = eval.gradient(u);
    std::vector<double> step;
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -g[i];
    if (auto s = solve(eval.hessian(u), rhs)) {
      step = std::move(*s);
    } else {
      step = g;
      for (double& x : step) x *= 0.1 / std::max(1.0, gn);
    }

    auto trial_at = [&](double lambda) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = u[i] + lambda * step[i];
      return t;
    };
    double lambda = 1.0;
    int halvings = 0;
    while (!positive(trial_at(lambda))) {
      lambda *= 0.5;
      if (++halvings > 60) throw ConvergenceError("newton: cannot keep the iterate positive");
    }
    // Prefer a step that reduces the gradient norm; otherwise take the
    // feasible full step anyway.
    std::vector<double> next = trial_at(lambda);
    for (int k = 0; k < 30; ++k) {
      const std::vector<double> t = trial_at(lambda);
      if (norm2(eval.gradient(t)) < gn) {
        next = t;
        break;
      }
      lambda *= 0.5;
    }
    u = std::move(next);
  }

  CriticalPoint cp;
  cp.iterations = iter;
  if (auto exact = snap_exact(chart, u)) {
    cp.coords = Coords::from_exact(std::move(*exact));
    cp.gradient_norm = 0;
  } else {
    cp.coords = Coords::from_double(u);
    cp.gradient_norm = gn;
  }
  cp.spectrum = hessian_spectrum(chart, cp.coords.approx);
  cp.label = classify_spectrum(cp.spectrum, classify_options.kernel_tol);
  return cp;
}

EigenDecomposition hessian_spectrum(const SliceChart& chart, std::span<const double> point) {
  return jacobi_eigen(ChartEvaluator(chart).hessian(point));
}

Classification classify_spectrum(const EigenDecomposition& spectrum, double kernel_tol) {
  double scale = 0;
  for (double v : spectrum.values) scale = std::max(scale, std::abs(v));
  const double band = kernel_tol * scale;
  if (scale == 0) return spectrum.values.empty() ? Classification::LocalMaxCandidate : Classification::Degenerate;
  if (std::any_of(spectrum.values.begin(), spectrum.values.end(), [&](double v) { return v > band; }))
    return Classification::Saddle;
  if (std::all_of(spectrum.values.begin(), spectrum.values.end(), [&](double v) { return v < -band; }))
    return Classification::LocalMaxCandidate;
  return Classification::Degenerate;
}

Classification classify(const SliceChart& chart, std::span<const double> point, const ClassifyOptions& options) {
  if (!is_critical(chart, point, options.gradient_tol)) return Classification::NotCritical;
  return classify_spectrum(hessian_spectrum(chart, point), options.kernel_tol);
}

std::vector<std::vector<double>> kernel_basis(const SliceChart& chart, std::span<const double> point,
                                              const ClassifyOptions& options) {
  if (!is_critical(chart, point, options.gradient_tol))
    throw InvalidArgument("kernel_basis: point is not critical");
  const EigenDecomposition spectrum = hessian_spectrum(chart, point);
  double scale = 0;
  for (double v : spectrum.values) scale = std::max(scale, std::abs(v));
  std::vector<std::vector<double>> basis;
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    if (std::abs(spectrum.values[k]) > options.kernel_tol * scale) continue;
    std::vector<double> v = spectrum.vectors[k];
    const double len = norm2(v);
    for (double& x : v) x /= len;
    for (double x : v) {
      if (std::abs(x) <= 1e-14) continue;
      if (x < 0)
        for (double& y : v) y = -y;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<CriticalPoint> find_critical_points(const SliceChart& chart, const SearchOptions& options) {
  const std::size_t n = chart.dimension();
  std::vector<CriticalPoint> found;
  if (n == 0) {
    CriticalPoint cp;
    cp.coords = Coords::from_exact({});
    cp.label = Classification::LocalMaxCandidate;
    found.push_back(cp);
    return found;
  }

  const int m = std::max(1, options.points_per_axis);
  std::vector<double> axis(m);
  for (int k = 0; k < m; ++k) {
    const double s = m == 1 ? 0.5 : static_cast<double>(k) / (m - 1);
    axis[k] = std::exp(std::log(options.grid_low) + s * (std::log(options.grid_high) - std::log(options.grid_low)));
  }

  auto same = [&](const CriticalPoint& a, const CriticalPoint& b) {
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(a.coords.approx[i] - b.coords.approx[i]) >
          options.dedupe_tol * std::max(1.0, std::abs(a.coords.approx[i])))
        return false;
    return true;
  };

  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<double> start(n);
    for (std::size_t i = 0; i < n; ++i) start[i] = axis[idx[i]];
    try {
      CriticalPoint cp = newton_critical(chart, start, options.newton, options.classify);
      const bool bounded = std::all_of(cp.coords.approx.begin(), cp.coords.approx.end(), [&](double x) {
        return x >= 1 / options.max_ratio && x <= options.max_ratio;
      });
      if (!bounded) throw ConvergenceError("search: iterate escaped to the boundary of the cone");
      auto dup = std::find_if(found.begin(), found.end(), [&](const CriticalPoint& p) { return same(p, cp); });
      if (dup == found.end())
        found.push_back(std::move(cp));
      else if (!dup->coords.exact && cp.coords.exact)
        *dup = std::move(cp);
    } catch (const ConvergenceError&) {
    } catch (const DomainError&) {
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
  std::sort(found.begin(), found.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.coords.approx < b.coords.approx; });
  return found;
}

}  // namespace einstab
