#include "einstab/space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "einstab/error.hpp"

namespace einstab {

TripleKey make_triple_key(std::size_t i, std::size_t j, std::size_t k) {
  TripleKey key{i, j, k};
  std::sort(key.begin(), key.end());
  return key;
}

long HomogeneousSpace::dimension() const {
  long d = 0;
  for (long dk : dims) d += dk;
  return d;
}

std::vector<std::string> validate(const HomogeneousSpace& space) {
  std::vector<std::string> issues;
  const std::size_t r = space.summands();
  if (r == 0) issues.push_back("space has no summands (r must be >= 1)");
  for (std::size_t k = 0; k < r; ++k)
    if (space.dims[k] <= 0)
      issues.push_back("dims[" + std::to_string(k) + "] = " + std::to_string(space.dims[k]) +
                       " is not a positive integer");
  if (space.b.size() != r)
    issues.push_back("b has " + std::to_string(space.b.size()) + " entries, expected " + std::to_string(r));
  for (std::size_t k = 0; k < space.b.size(); ++k)
    if (space.b[k] <= 0) issues.push_back("b[" + std::to_string(k) + "] = " + to_string(space.b[k]) + " is not positive");

  TripleMap seen;
  for (const auto& t : space.triples) {
    std::ostringstream label;
    label << '[' << t.i << t.j << t.k << ']';
    if (t.i >= r || t.j >= r || t.k >= r) {
      issues.push_back("triple " + label.str() + " has an index outside [0, " + std::to_string(r) + ")");
      continue;
    }
    if (t.value < 0) issues.push_back("triple " + label.str() + " = " + to_string(t.value) + " is negative");
    const TripleKey key = make_triple_key(t.i, t.j, t.k);
    auto [it, inserted] = seen.emplace(key, t.value);
    if (!inserted && it->second != t.value)
      issues.push_back("triple " + label.str() + " = " + to_string(t.value) +
                       " disagrees with a permutation of the same indices (" + to_string(it->second) + ")");
  }
  return issues;
}

namespace {

void require_valid(const HomogeneousSpace& space) {
  const auto issues = validate(space);
  if (issues.empty()) return;
  std::string msg = "invalid space '" + space.name + "':";
  for (const auto& issue : issues) msg += "\n  " + issue;
  throw InvalidArgument(msg);
}

}  // namespace

TripleMap canonical_triples(const HomogeneousSpace& space) {
  require_valid(space);
  TripleMap out;
  for (const auto& t : space.triples)
    if (t.value != 0) out.emplace(make_triple_key(t.i, t.j, t.k), t.value);
  return out;
}

Signomial scalar_curvature(const HomogeneousSpace& space) {
  const TripleMap triples = canonical_triples(space);
  const std::size_t r = space.summands();
  Signomial scal(r);
  for (std::size_t k = 0; k < r; ++k)
    scal += Signomial::term(r, Rational(1, 2) * space.b[k] * space.dims[k], {{k, Rational(-1)}});

  for (const auto& [key, value] : triples) {
    // Distinct orderings (i, j, k) of the multiset; each contributes x_k / (x_i x_j).
    std::set<TripleKey> orbit;
    TripleKey perm = key;
    do {
      orbit.insert(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& [i, j, k] : orbit) {
      Monomial::Exponents e;
      e[i] -= 1;
      e[j] -= 1;
      e[k] += 1;
      scal += Signomial::term(r, Rational(-1, 4) * value, Monomial(std::move(e)));
    }
  }
  return scal;
}

Monomial volume_monomial(const HomogeneousSpace& space) {
  require_valid(space);
  Monomial::Exponents e;
  for (std::size_t k = 0; k < space.summands(); ++k) e.emplace(k, Rational(space.dims[k]));
  return Monomial(std::move(e));
}

HomogeneousSpace permute_summands(const HomogeneousSpace& space, const std::vector<std::size_t>& perm) {
  const std::size_t r = space.summands();
  if (perm.size() != r) throw InvalidArgument("permutation size does not match the number of summands");
  std::vector<bool> hit(r, false);
  for (std::size_t p : perm) {
    if (p >= r || hit[p]) throw InvalidArgument("not a permutation");
    hit[p] = true;
  }
  HomogeneousSpace out;
  out.name = space.name;
  out.dims.resize(r);
  out.b.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    out.dims[perm[k]] = space.dims[k];
    out.b[perm[k]] = k < space.b.size() ? space.b[k] : Rational(1);
  }
  for (const auto& t : space.triples) out.triples.push_back({perm.at(t.i), perm.at(t.j), perm.at(t.k), t.value});
  return out;
}

std::vector<Signomial> gradient(const Signomial& f) {
  std::vector<Signomial> g;
  g.reserve(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) g.push_back(f.partial(i));
  return g;
}

SignomialMatrix hessian(const Signomial& f) {
  const std::size_t n = f.arity();
  SignomialMatrix h(n, std::vector<Signomial>(n, Signomial(n)));
  for (std::size_t i = 0; i < n; ++i) {
    const Signomial fi = f.partial(i);
    for (std::size_t j = i; j < n; ++j) {
      h[i][j] = fi.partial(j);
      h[j][i] = h[i][j];
    }
  }
  return h;
}

PartialCache::PartialCache(Signomial f) : f_(std::move(f)) {}

const Signomial& PartialCache::get(std::vector<std::size_t> indices) {
  if (indices.empty()) return f_;
  std::sort(indices.begin(), indices.end());
  if (indices.back() >= f_.arity()) throw InvalidArgument("partial index out of range");
  if (auto it = cache_.find(indices); it != cache_.end()) return it->second;
  // Differentiate the cached parent (all but the last index) once more.
  const std::size_t last = indices.back();
  std::vector<std::size_t> parent(indices.begin(), indices.end() - 1);
  Signomial d = get(parent).partial(last);
  return cache_.emplace(std::move(indices), std::move(d)).first->second;
}

}  // namespace einstab
