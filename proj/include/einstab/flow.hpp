#ifndef EINSTAB_FLOW_HPP
#define EINSTAB_FLOW_HPP

#include <ostream>
#include <vector>

#include "einstab/slice.hpp"

namespace einstab {

enum class Termination { Budget, GradientSmall, LeftRegion };
const char* to_string(Termination t);

struct TrajectorySample {
  double t = 0;
  std::vector<double> point;
  double value = 0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step = 0;
  Termination reason = Termination::Budget;
  int rejected_steps = 0;

  // Largest drop value[i] - value[i+1] over consecutive samples (0 if none).
  double max_decrease() const;
  // rows "t,x0,...,scal" with a header line
  void write_csv(std::ostream& out) const;
};

struct FlowOptions {
  double step = 1e-3;
  long max_steps = 100000;
  double gradient_tol = 1e-10;
  double monotone_tol = 1e-10;  // largest accepted per-step drop of scal
  // Box region in chart coordinates; empty vectors mean unbounded.
  std::vector<double> lower;
  std::vector<double> upper;
};

// Classical RK4 for u' = grad f(u) on the chart. A step whose stages leave
// the positive orthant, or which lowers scal by more than monotone_tol, is
// retried with half the step; 20 consecutive rejections throw
// ConvergenceError.
Trajectory integrate_ascent(const SliceChart& chart, std::vector<double> start, const FlowOptions& options = {});

}  // namespace einstab

#endif
