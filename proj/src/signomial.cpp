#include "einstab/signomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "einstab/error.hpp"

namespace einstab {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Exponents exponents) : exponents_(std::move(exponents)) {
  std::erase_if(exponents_, [](const auto& kv) { return kv.second == 0; });
}

Monomial Monomial::variable(std::size_t var, const Rational& exponent) {
  Exponents e;
  if (exponent != 0) e.emplace(var, exponent);
  return Monomial(std::move(e));
}

Rational Monomial::exponent(std::size_t var) const {
  auto it = exponents_.find(var);
  return it == exponents_.end() ? Rational(0) : it->second;
}

std::size_t Monomial::min_arity() const {
  return exponents_.empty() ? 0 : exponents_.rbegin()->first + 1;
}

Monomial Monomial::pow(const Rational& power) const {
  if (power == 0) return Monomial{};
  Exponents e = exponents_;
  for (auto& [var, exp] : e) exp *= power;
  return Monomial(std::move(e));
}

Monomial Monomial::without(std::size_t var) const {
  Exponents e = exponents_;
  e.erase(var);
  return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial::Exponents e = a.exponents_;
  for (const auto& [var, exp] : b.exponents_) e[var] += exp;
  return Monomial(std::move(e));
}

// ------------------------------------------------------------------ Number

double to_double(const Number& value) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
          return v.get_d();
        else
          return v;
      },
      value);
}

std::string to_string(const Number& value) {
  if (const auto* q = std::get_if<Rational>(&value)) return to_string(*q);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value));
  return buf;
}

// --------------------------------------------------------------- Signomial

Signomial Signomial::constant(std::size_t arity, const Rational& c) {
  Signomial f(arity);
  f.add_term(Monomial{}, c);
  return f;
}

Signomial Signomial::term(std::size_t arity, const Rational& c, Monomial m) {
  if (m.min_arity() > arity)
    throw InvalidArgument("monomial mentions a variable beyond arity " + std::to_string(arity));
  Signomial f(arity);
  f.add_term(m, c);
  return f;
}

Signomial Signomial::term(std::size_t arity, const Rational& c,
                          std::initializer_list<std::pair<std::size_t, Rational>> exps) {
  Monomial::Exponents e;
  for (const auto& [var, exp] : exps) e[var] += exp;
  return term(arity, c, Monomial(std::move(e)));
}

Rational Signomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Signomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Signomial::check_arity(const Signomial& other, const char* op) const {
  if (arity_ != other.arity_)
    throw InvalidArgument(std::string("arity mismatch in ") + op + ": " + std::to_string(arity_) +
                          " vs " + std::to_string(other.arity_));
}

Signomial Signomial::operator-() const {
  Signomial r(arity_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Signomial& Signomial::operator+=(const Signomial& g) {
  check_arity(g, "add");
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

Signomial operator+(const Signomial& f, const Signomial& g) {
  Signomial r = f;
  r += g;
  return r;
}

Signomial operator-(const Signomial& f, const Signomial& g) { return f + (-g); }

Signomial operator*(const Signomial& f, const Signomial& g) {
  f.check_arity(g, "mul");
  Signomial r(f.arity_);
  for (const auto& [mf, cf] : f.terms_)
    for (const auto& [mg, cg] : g.terms_) r.add_term(mf * mg, cf * cg);
  return r;
}

Signomial operator*(const Rational& c, const Signomial& f) {
  Signomial r(f.arity_);
  if (c == 0) return r;
  for (const auto& [m, cf] : f.terms_) r.terms_.emplace(m, c * cf);
  return r;
}

Signomial Signomial::partial(std::size_t var) const {
  if (var >= arity_) throw InvalidArgument("partial: variable index out of range");
  Signomial r(arity_);
  for (const auto& [m, c] : terms_) {
    const Rational e = m.exponent(var);
    if (e == 0) continue;
    Monomial::Exponents exps = m.exponents();
    exps[var] = e - 1;
    r.add_term(Monomial(std::move(exps)), c * e);
  }
  return r;
}

Signomial Signomial::substitute_monomial(std::size_t var, const Rational& coeff,
                                         const Monomial& replacement) const {
  if (var >= arity_) throw InvalidArgument("substitute: variable index out of range");
  if (replacement.mentions(var))
    throw InvalidArgument("substitute: replacement mentions the substituted variable x" +
                          std::to_string(var));
  if (replacement.min_arity() > arity_)
    throw InvalidArgument("substitute: replacement mentions a variable beyond arity");
  if (coeff <= 0) throw DomainError("substitute: replacement coefficient must be positive");
  Signomial r(arity_);
  for (const auto& [m, c] : terms_) {
    const Rational e = m.exponent(var);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    auto factor = exact_pow(coeff, e);
    if (!factor)
      throw DomainError("substitute: " + einstab::to_string(coeff) + "^" + einstab::to_string(e) +
                        " is irrational; use floating evaluation instead");
    r.add_term(m.without(var) * replacement.pow(e), c * *factor);
  }
  return r;
}

Signomial Signomial::drop_variable(std::size_t var) const {
  if (var >= arity_) throw InvalidArgument("drop_variable: index out of range");
  Signomial r(arity_ - 1);
  for (const auto& [m, c] : terms_) {
    if (m.mentions(var))
      throw InvalidArgument("drop_variable: x" + std::to_string(var) + " still occurs");
    Monomial::Exponents e;
    for (const auto& [v, exp] : m.exponents()) e.emplace(v > var ? v - 1 : v, exp);
    r.terms_.emplace(Monomial(std::move(e)), c);
  }
  return r;
}

namespace {

template <class T>
void check_point(std::size_t arity, std::span<const T> point) {
  if (point.size() != arity)
    throw InvalidArgument("evaluation point has " + std::to_string(point.size()) +
                          " coordinates, expected " + std::to_string(arity));
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!(point[i] > 0))
      throw DomainError("coordinate x" + std::to_string(i) + " is not strictly positive");
}

}  // namespace

Rational Signomial::eval_exact(std::span<const Rational> point) const {
  check_point(arity_, point);
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [var, e] : m.exponents()) {
      auto p = exact_pow(point[var], e);
      if (!p)
        throw DomainError("x" + std::to_string(var) + " = " + einstab::to_string(point[var]) +
                          " raised to " + einstab::to_string(e) + " is irrational");
      value *= *p;
    }
    sum += value;
  }
  return sum;
}

bool Signomial::exactly_evaluable(std::span<const Rational> point) const {
  if (point.size() != arity_) return false;
  for (const auto& x : point)
    if (x <= 0) return false;
  for (const auto& [m, c] : terms_)
    for (const auto& [var, e] : m.exponents())
      if (!exact_pow(point[var], e)) return false;
  return true;
}

double Signomial::eval(std::span<const double> point) const {
  check_point(arity_, point);
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double value = c.get_d();
    for (const auto& [var, e] : m.exponents()) value *= std::pow(point[var], e.get_d());
    sum += value;
  }
  return sum;
}

Number Signomial::eval(std::span<const Rational> point, EvalMode mode) const {
  if (mode == EvalMode::exact) return eval_exact(point);
  std::vector<double> p;
  p.reserve(point.size());
  for (const auto& x : point) p.push_back(x.get_d());
  return eval(std::span<const double>(p));
}

double Signomial::magnitude(std::span<const double> point) const {
  check_point(arity_, point);
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double value = std::abs(c.get_d());
    for (const auto& [var, e] : m.exponents()) value *= std::pow(point[var], e.get_d());
    sum += value;
  }
  return sum;
}

FloatSignomial Signomial::compile() const { return FloatSignomial(*this); }

std::string Signomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << einstab::to_string(c);
    for (const auto& [var, e] : m.exponents()) out << " * x" << var << '^' << einstab::to_string(e);
  }
  return out.str();
}

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim_view(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

Signomial Signomial::parse(std::string_view text, std::size_t arity) {
  Signomial f(arity);
  if (trim_view(text) == "0") return f;
  for (std::string_view term_text : split(text, '+')) {
    if (term_text.empty()) throw ParseError("empty term in signomial '" + std::string(text) + "'");
    Rational coeff = 1;
    Monomial::Exponents exps;
    bool first = true;
    for (std::string_view factor : split(term_text, '*')) {
      if (factor.empty()) throw ParseError("empty factor in term '" + std::string(term_text) + "'");
      if (factor.front() != 'x') {
        if (!first) throw ParseError("coefficient must lead the term '" + std::string(term_text) + "'");
        coeff = parse_rational(factor);
      } else {
        const auto caret = factor.find('^');
        std::string_view index = factor.substr(1, caret == std::string_view::npos ? factor.npos : caret - 1);
        if (index.empty() || !std::all_of(index.begin(), index.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          throw ParseError("malformed variable '" + std::string(factor) + "'");
        const std::size_t var = std::stoul(std::string(index));
        if (var >= arity) throw ParseError("variable x" + std::to_string(var) + " exceeds arity");
        exps[var] += caret == std::string_view::npos ? Rational(1) : parse_rational(factor.substr(caret + 1));
      }
      first = false;
    }
    f.add_term(Monomial(std::move(exps)), coeff);
  }
  return f;
}

// ---------------------------------------------------------- FloatSignomial

FloatSignomial::FloatSignomial(const Signomial& f) : arity_(f.arity()) {
  terms_.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) {
    Term t{c.get_d(), {}};
    for (const auto& [var, e] : m.exponents()) t.powers.emplace_back(var, e.get_d());
    terms_.push_back(std::move(t));
  }
}

double FloatSignomial::operator()(std::span<const double> point) const {
  check_point(arity_, point);
  double sum = 0;
  for (const auto& t : terms_) {
    double value = t.coeff;
    for (const auto& [var, e] : t.powers) value *= std::pow(point[var], e);
    sum += value;
  }
  return sum;
}

}  // namespace einstab
