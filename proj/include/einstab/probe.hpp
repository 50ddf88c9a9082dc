#ifndef EINSTAB_PROBE_HPP
#define EINSTAB_PROBE_HPP

#include <optional>
#include <vector>

#include "einstab/signomial.hpp"
#include "einstab/slice.hpp"

namespace einstab {

// Line u(t) = base + t * direction in chart coordinates.
struct CurveSpec {
  Coords base;
  Coords direction;

  // Throws InvalidArgument on a zero direction or a dimension mismatch and
  // DomainError on a nonpositive base.
  CurveSpec(Coords base, Coords direction);
  std::vector<double> at(double t) const;
};

enum class ProbeMode { exact, floating, automatic };

enum class Verdict { Inconclusive, NotLocalMax, StrictDescent };
const char* to_string(Verdict v);

// Directional derivatives S1 = grad f . v, S2 = v^T H v, S3 = sum f_ijk v_i v_j v_k
// at the base point of a curve.
struct ProbeResult {
  Number s1 = 0.0;
  Number s2 = 0.0;
  Number s3 = 0.0;
  EvalMode mode = EvalMode::floating;
  // Same contractions with every term replaced by its absolute value: the
  // rounding scale of s1, s2, s3 in floating mode.
  double magnitude1 = 0;
  double magnitude2 = 0;
  double magnitude3 = 0;
  // Largest |f_ijk| at the base point.
  double third_partial_scale = 0;
  std::optional<Verdict> verdict;
};

// Exact partials of the reduced signomial contracted with the direction.
// Exact mode needs rational base and direction and rational powers at the
// base (DomainError otherwise); automatic picks exact whenever possible.
// Throws DomainError if the curve leaves the positive orthant for |t| <= t_check.
ProbeResult directional_derivatives(const SliceChart& chart, const CurveSpec& curve,
                                    ProbeMode mode = ProbeMode::automatic, double t_check = 1e-2);

struct VerdictOptions {
  double tol_low = 1e-8;
  double tol_high = 1e-6;
};

// Exact results use exact zero tests; floating ones compare against
// scale = max(|S3|, third_partial_scale).
Verdict inflection_verdict(const ProbeResult& result, const VerdictOptions& options = {});

struct FiniteDifferences {
  double s1 = 0;
  double s2 = 0;
  double s3 = 0;
};

// Central differences of t -> f(u(t)) with step h.
FiniteDifferences fd_check(const SliceChart& chart, const CurveSpec& curve, double h = 1e-3);

// Richardson combination (4 D(h/2) - D(h)) / 3 of the stencils above, which
// cancels their O(h^2) truncation error.
FiniteDifferences fd_check_extrapolated(const SliceChart& chart, const CurveSpec& curve, double h = 1e-3);

struct Witness {
  std::vector<double> point;
  double t = 0;  // curve parameter of the witness
  double value = 0;
  double base_value = 0;
  double improvement = 0;
  int halvings = 0;
};

// base + sign(S3) * eps * direction, halving eps (up to 20 times) until the
// reduced scalar curvature strictly exceeds its base value. Requires a
// NotLocalMax verdict; throws ConvergenceError if no improvement is found.
Witness improving_offset(const SliceChart& chart, const CurveSpec& curve, const ProbeResult& result,
                         double eps = 1e-2);

}  // namespace einstab

#endif
