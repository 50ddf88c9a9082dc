#include "einstab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "einstab/error.hpp"
#include "einstab/space.hpp"

namespace einstab {

CurveSpec::CurveSpec(Coords base_point, Coords dir) : base(std::move(base_point)), direction(std::move(dir)) {
  if (base.size() != direction.size()) throw InvalidArgument("curve: base and direction dimensions differ");
  if (std::all_of(direction.approx.begin(), direction.approx.end(), [](double x) { return x == 0.0; }))
    throw InvalidArgument("curve: direction must be nonzero");
  if (direction.exact && std::all_of(direction.exact->begin(), direction.exact->end(), [](const Rational& x) { return x == 0; }))
    throw InvalidArgument("curve: direction must be nonzero");
  for (double x : base.approx)
    if (!(x > 0)) throw DomainError("curve: base point must be strictly positive");
}

std::vector<double> CurveSpec::at(double t) const {
  std::vector<double> p(base.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = base.approx[i] + t * direction.approx[i];
  return p;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::NotLocalMax: return "NotLocalMax";
    case Verdict::StrictDescent: return "StrictDescent";
  }
  return "?";
}

namespace {

void require_positive_curve(const CurveSpec& curve, double t) {
  for (double s : {-t, t})
    for (double x : curve.at(s))
      if (!(x > 0))
        throw DomainError("curve leaves the positive orthant within |t| <= " + std::to_string(t));
}

// Calls fn(tuple) for every ordered k-tuple over 0..n-1.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k, 0);
  if (n == 0) return;
  for (;;) {
    fn(idx);
    std::size_t d = 0;
    while (d < k && ++idx[d] == n) idx[d++] = 0;
    if (d == k) return;
  }
}

bool exact_possible(PartialCache& cache, const CurveSpec& curve) {
  if (!curve.base.exact || !curve.direction.exact) return false;
  const std::size_t n = cache.arity();
  bool ok = true;
  for (std::size_t k = 1; k <= 3 && ok; ++k)
    for_each_tuple(n, k, [&](const std::vector<std::size_t>& t) {
      if (ok && !cache.get(t).exactly_evaluable(*curve.base.exact)) ok = false;
    });
  return ok;
}

}  // namespace

ProbeResult directional_derivatives(const SliceChart& chart, const CurveSpec& curve, ProbeMode mode, double t_check) {
  const std::size_t n = chart.dimension();
  if (curve.base.size() != n) throw InvalidArgument("probe: curve dimension does not match the chart");
  require_positive_curve(curve, t_check);

  PartialCache cache(chart.reduced);
  bool exact = false;
  if (mode == ProbeMode::exact) {
    if (!exact_possible(cache, curve))
      throw DomainError("probe: exact mode needs rational base, direction and powers at the base point");
    exact = true;
  } else if (mode == ProbeMode::automatic) {
    exact = exact_possible(cache, curve);
  }

  ProbeResult res;
  res.mode = exact ? EvalMode::exact : EvalMode::floating;
  const std::vector<double>& base = curve.base.approx;
  const std::vector<double>& dir = curve.direction.approx;

  for (std::size_t k = 1; k <= 3; ++k) {
    Rational exact_sum = 0;
    double float_sum = 0;
    double magnitude = 0;
    std::map<std::vector<std::size_t>, std::pair<Rational, double>> values;
    for_each_tuple(n, k, [&](const std::vector<std::size_t>& t) {
      std::vector<std::size_t> key = t;
      std::sort(key.begin(), key.end());
      auto it = values.find(key);
      if (it == values.end()) {
        const Signomial& d = cache.get(key);
        const Rational q = exact ? d.eval_exact(*curve.base.exact) : Rational(0);
        const double f = exact ? q.get_d() : d.eval(base);
        it = values.emplace(key, std::make_pair(q, f)).first;
        if (k == 3) res.third_partial_scale = std::max(res.third_partial_scale, std::abs(f));
      }
      double vprod = 1;
      double vabs = 1;
      for (std::size_t i : t) {
        vprod *= dir[i];
        vabs *= std::abs(dir[i]);
      }
      if (exact) {
        Rational w = 1;
        for (std::size_t i : t) w *= (*curve.direction.exact)[i];
        exact_sum += it->second.first * w;
      } else {
        float_sum += it->second.second * vprod;
      }
      magnitude += cache.get(key).magnitude(base) * vabs;
    });
    const Number s = exact ? Number(exact_sum) : Number(float_sum);
    if (k == 1) {
      res.s1 = s;
      res.magnitude1 = magnitude;
    } else if (k == 2) {
      res.s2 = s;
      res.magnitude2 = magnitude;
    } else {
      res.s3 = s;
      res.magnitude3 = magnitude;
    }
  }
  return res;
}

Verdict inflection_verdict(const ProbeResult& r, const VerdictOptions& options) {
  if (r.mode == EvalMode::exact) {
    const Rational s1 = std::get<Rational>(r.s1);
    const Rational s2 = std::get<Rational>(r.s2);
    const Rational s3 = std::get<Rational>(r.s3);
    if (s1 == 0 && s2 == 0 && s3 != 0) return Verdict::NotLocalMax;
    if (s1 == 0 && s2 < 0) return Verdict::StrictDescent;
    return Verdict::Inconclusive;
  }
  const double s1 = to_double(r.s1);
  const double s2 = to_double(r.s2);
  const double s3 = to_double(r.s3);
  const double scale = std::max(std::abs(s3), r.third_partial_scale);
  if (scale == 0) return Verdict::Inconclusive;
  const bool s1_zero = std::abs(s1) < options.tol_low * scale;
  if (s1_zero && std::abs(s2) < options.tol_low * scale && std::abs(s3) > options.tol_high * scale)
    return Verdict::NotLocalMax;
  if (s1_zero && s2 < -options.tol_high * scale) return Verdict::StrictDescent;
  return Verdict::Inconclusive;
}

namespace {

long double wide(const Rational& q) {
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

// Extended-precision evaluation along a curve: the difference stencils divide
// rounding noise by h^3, which double precision cannot absorb when S3 is small
// next to f itself.
class WideCurve {
 public:
  WideCurve(const Signomial& f, const CurveSpec& curve) {
    for (const auto& [m, c] : f.terms()) {
      Term t{wide(c), {}};
      for (const auto& [var, e] : m.exponents()) t.powers.emplace_back(var, wide(e));
      terms_.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < curve.base.size(); ++i) {
      base_.push_back(curve.base.exact ? wide((*curve.base.exact)[i]) : curve.base.approx[i]);
      dir_.push_back(curve.direction.exact ? wide((*curve.direction.exact)[i]) : curve.direction.approx[i]);
    }
  }

  long double operator()(long double t) const {
    long double sum = 0;
    for (const auto& term : terms_) {
      long double v = term.coeff;
      for (const auto& [var, e] : term.powers) v *= std::pow(base_[var] + t * dir_[var], e);
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    long double coeff;
    std::vector<std::pair<std::size_t, long double>> powers;
  };
  std::vector<Term> terms_;
  std::vector<long double> base_, dir_;
};

}  // namespace

FiniteDifferences fd_check(const SliceChart& chart, const CurveSpec& curve, double h) {
  if (!(h > 0)) throw InvalidArgument("fd_check: step must be positive");
  require_positive_curve(curve, 3 * h);
  const WideCurve g(chart.reduced, curve);
  const long double w = h;
  const long double fm2 = g(-2 * w), fm1 = g(-w), f0 = g(0), fp1 = g(w), fp2 = g(2 * w);
  FiniteDifferences out;
  out.s1 = static_cast<double>((fp1 - fm1) / (2 * w));
  out.s2 = static_cast<double>((fp1 - 2 * f0 + fm1) / (w * w));
  out.s3 = static_cast<double>((fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * w * w * w));
  return out;
}

FiniteDifferences fd_check_extrapolated(const SliceChart& chart, const CurveSpec& curve, double h) {
  const FiniteDifferences coarse = fd_check(chart, curve, h);
  const FiniteDifferences fine = fd_check(chart, curve, h / 2);
  auto mix = [](double c, double f) { return (4 * f - c) / 3; };
  return {mix(coarse.s1, fine.s1), mix(coarse.s2, fine.s2), mix(coarse.s3, fine.s3)};
}

Witness improving_offset(const SliceChart& chart, const CurveSpec& curve, const ProbeResult& result, double eps) {
  const Verdict verdict = result.verdict.value_or(inflection_verdict(result));
  if (verdict != Verdict::NotLocalMax)
    throw InvalidArgument(std::string("improving_offset needs a NotLocalMax verdict, got ") + to_string(verdict));
  const double sign = to_double(result.s3) > 0 ? 1.0 : -1.0;
  const FloatSignomial f(chart.reduced);
  Witness w;
  w.base_value = f(curve.base.approx);
  for (int k = 0; k <= 20; ++k) {
    const double t = sign * eps * std::ldexp(1.0, -k);
    std::vector<double> p = curve.at(t);
    if (!std::all_of(p.begin(), p.end(), [](double x) { return x > 0; })) continue;
    const double value = f(p);
    if (value > w.base_value) {
      w.point = std::move(p);
      w.t = t;
      w.value = value;
      w.improvement = value - w.base_value;
      w.halvings = k;
      return w;
    }
  }
  throw ConvergenceError("improving_offset: no point along the curve beats the base value");
}

}  // namespace einstab
