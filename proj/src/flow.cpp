#include "einstab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "einstab/error.hpp"

namespace einstab {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Budget: return "budget";
    case Termination::GradientSmall: return "gradient-small";
    case Termination::LeftRegion: return "left-region";
  }
  return "?";
}

double Trajectory::max_decrease() const {
  double worst = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    worst = std::max(worst, samples[i - 1].value - samples[i].value);
  return worst;
}

void Trajectory::write_csv(std::ostream& out) const {
  const std::size_t n = samples.empty() ? 0 : samples.front().point.size();
  out << "t";
  for (std::size_t i = 0; i < n; ++i) out << ",x" << i;
  out << ",scal\n";
  char buf[40];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  for (const auto& s : samples) {
    out << num(s.t);
    for (double x : s.point) out << ',' << num(x);
    out << ',' << num(s.value) << '\n';
  }
}

namespace {

bool usable(const std::vector<double>& p) {
  return std::all_of(p.begin(), p.end(), [](double x) { return x > 0 && std::isfinite(x); });
}

bool inside(const std::vector<double>& p, const FlowOptions& o) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!o.lower.empty() && p[i] < o.lower[i]) return false;
    if (!o.upper.empty() && p[i] > o.upper[i]) return false;
  }
  return true;
}

}  // namespace

Trajectory integrate_ascent(const SliceChart& chart, std::vector<double> start, const FlowOptions& options) {
  const std::size_t n = chart.dimension();
  if (start.size() != n) throw InvalidArgument("flow: start has the wrong dimension");
  if ((!options.lower.empty() && options.lower.size() != n) || (!options.upper.empty() && options.upper.size() != n))
    throw InvalidArgument("flow: region bounds have the wrong dimension");
  if (!usable(start)) throw DomainError("flow: start must be strictly positive");
  if (!inside(start, options)) throw InvalidArgument("flow: start lies outside the region");
  if (!(options.step > 0)) throw InvalidArgument("flow: step must be positive");

  const ChartEvaluator eval(chart);
  Trajectory traj;
  traj.step = options.step;
  double t = 0;
  std::vector<double> u = std::move(start);
  traj.samples.push_back({t, u, eval.value(u)});

  auto axpy = [&](const std::vector<double>& base, double a, const std::vector<double>& k) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + a * k[i];
    return out;
  };

  for (long step = 0; step < options.max_steps; ++step) {
    const std::vector<double> k1 = eval.gradient(u);
    double gn = 0;
    for (double g : k1) gn += g * g;
    if (std::sqrt(gn) < options.gradient_tol) {
      traj.reason = Termination::GradientSmall;
      return traj;
    }
    double h = options.step;
    int rejections = 0;
    std::vector<double> next;
    const double current = traj.samples.back().value;
    double next_value = current;
    for (;;) {
      bool ok = false;
      const std::vector<double> p2 = axpy(u, h / 2, k1);
      if (usable(p2)) {
        const std::vector<double> k2 = eval.gradient(p2);
        const std::vector<double> p3 = axpy(u, h / 2, k2);
        if (usable(p3)) {
          const std::vector<double> k3 = eval.gradient(p3);
          const std::vector<double> p4 = axpy(u, h, k3);
          if (usable(p4)) {
            const std::vector<double> k4 = eval.gradient(p4);
            next.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) next[i] = u[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            // a step past the stability limit shows up as a drop in scal
            ok = usable(next) && (next_value = eval.value(next)) >= current - options.monotone_tol;
          }
        }
      }
      if (ok) break;
      ++traj.rejected_steps;
      if (++rejections >= 20)
        throw ConvergenceError("flow: 20 consecutive steps left the positive orthant or decreased scal");
      h *= 0.5;
    }
    t += h;
    u = std::move(next);
    traj.samples.push_back({t, u, next_value});
    if (!inside(u, options)) {
      traj.reason = Termination::LeftRegion;
      return traj;
    }
  }
  traj.reason = Termination::Budget;
  return traj;
}

}  // namespace einstab
