#ifndef EINSTAB_SLICE_HPP
#define EINSTAB_SLICE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "einstab/jacobi.hpp"
#include "einstab/signomial.hpp"
#include "einstab/space.hpp"

namespace einstab {

// A point or direction in chart coordinates. The double view is always
// present; the rational view exists when the coordinates are known exactly.
struct Coords {
  std::vector<double> approx;
  std::optional<std::vector<Rational>> exact;

  static Coords from_exact(std::vector<Rational> values);
  static Coords from_double(std::vector<double> values);
  std::size_t size() const { return approx.size(); }
};

// Unit-volume slice prod x_k^{d_k} = 1 parametrized by all coordinates but
// one: x_e = prod_{k != e} x_k^{-d_k/d_e}. Chart coordinate c corresponds to
// parent summand retained[c].
struct SliceChart {
  std::string label;
  std::size_t parent_arity = 0;
  std::size_t eliminated = 0;
  std::vector<std::size_t> retained;
  Monomial eliminated_value;  // over chart coordinates
  Signomial reduced;

  std::size_t dimension() const { return reduced.arity(); }
  // Full metric point (x_1, ..., x_r) on the slice.
  std::vector<double> inflate(std::span<const double> point) const;
  std::optional<std::vector<Rational>> inflate_exact(std::span<const Rational> point) const;
};

// Volume elimination of summand `eliminated` from scalar_curvature(space).
// Throws InvalidArgument on an invalid space or index.
SliceChart restrict(const HomogeneousSpace& space, std::size_t eliminated);

// Chart given directly by its reduced signomial, for families whose full
// structural-constant table is not available. eliminated_value is over the
// chart coordinates.
SliceChart reduced_chart(std::string label, Signomial reduced, std::size_t eliminated, Monomial eliminated_value);

// Compiled float gradient and Hessian of a chart, for iterative methods.
class ChartEvaluator {
 public:
  explicit ChartEvaluator(const SliceChart& chart);

  std::size_t dimension() const { return value_.arity(); }
  double value(std::span<const double> point) const { return value_(point); }
  std::vector<double> gradient(std::span<const double> point) const;
  SquareMatrix hessian(std::span<const double> point) const;
  // Rounding scale of the gradient: Euclidean norm of the per-component sums
  // of absolute term values.
  double gradient_scale(std::span<const double> point) const;

 private:
  FloatSignomial value_;
  std::vector<FloatSignomial> gradient_;
  std::vector<FloatSignomial> gradient_abs_;
  std::vector<std::vector<FloatSignomial>> hessian_;
};

enum class Classification { NotCritical, LocalMaxCandidate, Saddle, Degenerate };
const char* to_string(Classification c);

struct NewtonOptions {
  double tol = 1e-12;  // relative to max(1, gradient_scale)
  int max_iter = 100;
};

struct ClassifyOptions {
  double kernel_tol = 1e-9;  // relative to max |eigenvalue|
  double gradient_tol = 1e-12;
};

struct CriticalPoint {
  Coords coords;
  double gradient_norm = 0;
  int iterations = 0;
  Classification label = Classification::NotCritical;
  EigenDecomposition spectrum;
};

double gradient_norm(const SliceChart& chart, std::span<const double> point);
bool is_critical(const SliceChart& chart, std::span<const double> point, double tol = 1e-12);

// Damped Newton iteration on the chart gradient. Steps are halved until the
// iterate stays in the positive orthant. When the Hessian is singular a
// damped gradient step is used instead. If the converged point rounds to a
// small-denominator rational with an exactly vanishing gradient, the exact
// coordinates are attached. Throws ConvergenceError when the budget runs out.
CriticalPoint newton_critical(const SliceChart& chart, std::vector<double> start, const NewtonOptions& options = {},
                              const ClassifyOptions& classify_options = {});

EigenDecomposition hessian_spectrum(const SliceChart& chart, std::span<const double> point);

Classification classify(const SliceChart& chart, std::span<const double> point, const ClassifyOptions& options = {});
Classification classify_spectrum(const EigenDecomposition& spectrum, double kernel_tol);

// Eigenvectors in the kernel band, each with its first nonzero coordinate
// positive. Throws InvalidArgument if the point is not critical.
std::vector<std::vector<double>> kernel_basis(const SliceChart& chart, std::span<const double> point,
                                              const ClassifyOptions& options = {});

struct SearchOptions {
  double grid_low = 0.25;
  double grid_high = 4.0;
  int points_per_axis = 5;
  double dedupe_tol = 1e-8;
  // Points with a coordinate outside [1/max_ratio, max_ratio] are dropped:
  // there the gradient is tiny only because scal decays at infinity.
  double max_ratio = 1e6;
  NewtonOptions newton;
  ClassifyOptions classify;
};

// Multi-start Newton from a logarithmic grid. Results are deduplicated and
// sorted by coordinates.
std::vector<CriticalPoint> find_critical_points(const SliceChart& chart, const SearchOptions& options = {});

}  // namespace einstab

#endif
