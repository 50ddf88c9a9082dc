#ifndef EINSTAB_TESTS_SUPPORT_HPP
#define EINSTAB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "einstab/rational.hpp"
#include "einstab/signomial.hpp"

namespace einstab::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// p/q with |p| <= max_num, 1 <= q <= max_den, never zero.
inline Rational random_rational(long max_num, long max_den) {
  for (;;) {
    const long p = uniform_int(-max_num, max_num);
    if (p == 0) continue;
    return ratio(p, uniform_int(1, max_den));
  }
}

// Random signomial whose exponents have denominators up to 3.
inline Signomial random_signomial(std::size_t arity, int terms = 4) {
  Signomial f(arity);
  for (int t = 0; t < terms; ++t) {
    Monomial::Exponents e;
    for (std::size_t v = 0; v < arity; ++v)
      if (uniform_int(0, 2) != 0) e[v] = random_rational(4, 3);
    f += Signomial::term(arity, random_rational(9, 4), Monomial(std::move(e)));
  }
  return f;
}

// Random point with coordinates p/q in [1/2, 2] whose integer powers stay
// exact; exponent denominators force float evaluation elsewhere.
inline std::vector<Rational> random_point(std::size_t arity) {
  std::vector<Rational> p;
  for (std::size_t v = 0; v < arity; ++v) p.push_back(ratio(uniform_int(4, 16), 8));
  return p;
}

inline std::vector<double> to_doubles(const std::vector<Rational>& p) {
  std::vector<double> out;
  for (const auto& q : p) out.push_back(q.get_d());
  return out;
}

inline bool close(double a, double b, double rel, double abs_floor = 0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

// Difference oracle against the exact contractions: S1, S2 to 1e-6 and S3 to
// 1e-4, relative to max(|S_k|, rounding scale of S_k). floor is an absolute
// allowance for contractions that vanish identically.
template <class Fd, class Result>
bool fd_agrees(const Fd& fd, const Result& r, double floor) {
  auto ok = [&](double approx, double exact, double magnitude, double tol) {
    return std::abs(approx - exact) <= tol * std::max(std::abs(exact), magnitude) + floor;
  };
  return ok(fd.s1, to_double(r.s1), r.magnitude1, 1e-6) && ok(fd.s2, to_double(r.s2), r.magnitude2, 1e-6) &&
         ok(fd.s3, to_double(r.s3), r.magnitude3, 1e-4);
}

}  // namespace einstab::testing

#endif
