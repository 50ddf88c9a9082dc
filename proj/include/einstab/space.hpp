#ifndef EINSTAB_SPACE_HPP
#define EINSTAB_SPACE_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "einstab/rational.hpp"
#include "einstab/signomial.hpp"

namespace einstab {

// One structural-constant entry as written in input data. The same unordered
// multiset may appear several times (e.g. [122] and [212]); validate() checks
// that such repetitions agree.
struct TripleEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Rational value;
};

// Sorted index multiset {i <= j <= k}.
using TripleKey = std::array<std::size_t, 3>;
using TripleMap = std::map<TripleKey, Rational>;

TripleKey make_triple_key(std::size_t i, std::size_t j, std::size_t k);

// Isotropy-summand data of a compact homogeneous space G/K with respect to a
// Q-orthogonal decomposition p = p_1 + ... + p_r: summand dimensions, Casimir
// coefficients b_k and the structural constants [ijk].
struct HomogeneousSpace {
  std::string name;
  std::vector<long> dims;
  std::vector<Rational> b;
  std::vector<TripleEntry> triples;

  std::size_t summands() const { return dims.size(); }
  long dimension() const;
};

// Every violated invariant as a human-readable line; empty means valid.
std::vector<std::string> validate(const HomogeneousSpace& space);

// Structural constants keyed by sorted multiset, zero entries dropped.
// Throws InvalidArgument on an invalid space.
TripleMap canonical_triples(const HomogeneousSpace& space);

// scal(x) = 1/2 sum_k b_k d_k / x_k - 1/4 sum_{i,j,k ordered} [ijk] x_k / (x_i x_j)
//
// Each unordered entry contributes once per distinct ordering of its indices
// (6, 3 or 1 terms). Throws InvalidArgument on an invalid space.
Signomial scalar_curvature(const HomogeneousSpace& space);

// prod_k x_k^{d_k}
Monomial volume_monomial(const HomogeneousSpace& space);

// Relabels summands: new summand perm[k] is old summand k.
HomogeneousSpace permute_summands(const HomogeneousSpace& space, const std::vector<std::size_t>& perm);

using SignomialMatrix = std::vector<std::vector<Signomial>>;

std::vector<Signomial> gradient(const Signomial& f);
// Symmetric by construction: the lower triangle copies the upper one.
SignomialMatrix hessian(const Signomial& f);

// Memoized lattice of exact partial derivatives of one signomial, keyed by
// the sorted multi-index. Not thread-safe; keep one per task.
class PartialCache {
 public:
  explicit PartialCache(Signomial f);

  const Signomial& function() const { return f_; }
  std::size_t arity() const { return f_.arity(); }
  // d^k f / dx_{i1} ... dx_{ik}; order of the indices is irrelevant.
  const Signomial& get(std::vector<std::size_t> indices);

 private:
  Signomial f_;
  std::map<std::vector<std::size_t>, Signomial> cache_;
};

}  // namespace einstab

#endif
