#ifndef EINSTAB_SIGNOMIAL_HPP
#define EINSTAB_SIGNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "einstab/rational.hpp"

namespace einstab {

// Power product prod_i x_i^{e_i} with rational exponents. Zero exponents are
// never stored, so two monomials are equal iff their exponent maps are.
class Monomial {
 public:
  using Exponents = std::map<std::size_t, Rational>;

  Monomial() = default;
  explicit Monomial(Exponents exponents);

  // x_var^exponent
  static Monomial variable(std::size_t var, const Rational& exponent = Rational(1));

  const Exponents& exponents() const { return exponents_; }
  Rational exponent(std::size_t var) const;
  bool mentions(std::size_t var) const { return exponents_.count(var) != 0; }
  bool is_one() const { return exponents_.empty(); }
  // One past the largest variable index, 0 for the unit monomial.
  std::size_t min_arity() const;

  Monomial pow(const Rational& power) const;
  Monomial without(std::size_t var) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exponents_ == b.exponents_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exponents_ < b.exponents_; }

 private:
  Exponents exponents_;
};

enum class EvalMode { exact, floating };

// Result of an evaluation that may be exact or floating.
using Number = std::variant<Rational, double>;

double to_double(const Number& value);
std::string to_string(const Number& value);

class FloatSignomial;

// Finite sum of c * monomial over `arity` positive variables, with nonzero
// rational coefficients. The term map is canonical: structural equality is
// mathematical equality.
class Signomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Signomial(std::size_t arity = 0) : arity_(arity) {}

  static Signomial constant(std::size_t arity, const Rational& c);
  static Signomial term(std::size_t arity, const Rational& c, Monomial m);
  // Convenience for tests and catalog constructors: c * prod x_i^{e_i}.
  static Signomial term(std::size_t arity, const Rational& c,
                        std::initializer_list<std::pair<std::size_t, Rational>> exps);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  Signomial operator-() const;
  friend Signomial operator+(const Signomial& f, const Signomial& g);
  friend Signomial operator-(const Signomial& f, const Signomial& g);
  friend Signomial operator*(const Signomial& f, const Signomial& g);
  friend Signomial operator*(const Rational& c, const Signomial& f);
  Signomial& operator+=(const Signomial& g);
  friend bool operator==(const Signomial& f, const Signomial& g) {
    return f.arity_ == g.arity_ && f.terms_ == g.terms_;
  }

  // Exact power-rule derivative.
  Signomial partial(std::size_t var) const;

  // Replaces x_var by coeff * replacement. Exact: throws DomainError when some
  // coeff^e is irrational, InvalidArgument when the replacement mentions var.
  Signomial substitute_monomial(std::size_t var, const Rational& coeff,
                                const Monomial& replacement) const;

  // Removes an unused variable and shifts the higher indices down by one.
  Signomial drop_variable(std::size_t var) const;

  // Exact value at a positive rational point. Throws DomainError on a
  // nonpositive coordinate or an irrational power.
  Rational eval_exact(std::span<const Rational> point) const;
  bool exactly_evaluable(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;
  Number eval(std::span<const Rational> point, EvalMode mode) const;
  // sum over terms of |c * monomial(point)|: the rounding-error scale of eval.
  double magnitude(std::span<const double> point) const;

  FloatSignomial compile() const;

  // "c * x0^p/q * x1^p/q + ..." in canonical term order; "0" when empty.
  std::string to_string() const;
  static Signomial parse(std::string_view text, std::size_t arity);

 private:
  void add_term(const Monomial& m, const Rational& c);
  void check_arity(const Signomial& other, const char* op) const;

  std::size_t arity_;
  Terms terms_;
};

// Double-precision snapshot of a signomial for hot evaluation loops (Newton,
// flow). Same values as Signomial::eval, no rational conversions per call.
class FloatSignomial {
 public:
  FloatSignomial() = default;
  explicit FloatSignomial(const Signomial& f);

  std::size_t arity() const { return arity_; }
  double operator()(std::span<const double> point) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, double>> powers;
  };
  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

}  // namespace einstab

#endif
