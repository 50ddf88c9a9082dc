#include "einstab/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "einstab/error.hpp"

namespace einstab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Exact integer k-th root of a nonnegative integer, if one exists.
std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long k) {
  if (k == 1) return value;
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) == 0) return std::nullopt;
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in rational literal '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational ratio(long p, long q) {
  if (q == 0) throw DomainError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational ipow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0 && base == 0) throw DomainError("zero raised to a negative power");
  const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exp < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw DomainError("exact_pow requires a positive base");
  if (exponent == 0 || base == 1) return Rational(1);
  if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p())
    return std::nullopt;
  const unsigned long q = exponent.get_den().get_ui();
  const long p = exponent.get_num().get_si();
  auto num_root = exact_root(base.get_num(), q);
  if (!num_root) return std::nullopt;
  auto den_root = exact_root(base.get_den(), q);
  if (!den_root) return std::nullopt;
  Rational root(*num_root, *den_root);
  root.canonicalize();
  return ipow(root, p);
}

double to_double(const Rational& value) { return value.get_d(); }

Rational approximate(double value, long max_den) {
  if (!std::isfinite(value)) throw DomainError("cannot approximate a non-finite value");
  // Convergents h/k of the continued fraction of value.
  long double x = value;
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  long double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-18L; ++iter) {
    x = 1.0L / frac;
    const long a = static_cast<long>(std::floor(x));
    frac = x - std::floor(x);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  Rational r(h, k);
  r.canonicalize();
  return r;
}

}  // namespace einstab
