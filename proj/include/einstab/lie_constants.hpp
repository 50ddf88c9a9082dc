#ifndef EINSTAB_LIE_CONSTANTS_HPP
#define EINSTAB_LIE_CONSTANTS_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "einstab/space.hpp"

namespace einstab::lie {

// Real Lie algebra in a fixed basis e_0..e_{n-1}.
//
// ad[a](g, b) is the e_g coordinate of [e_a, e_b], so ad[a] is the matrix of
// ad(e_a). gram(a, b) = Q(e_a, e_b). basis holds, column by column, the
// current basis expressed in the basis the table was first built from.
struct BracketTable {
  std::size_t dim = 0;
  std::vector<Eigen::MatrixXd> ad;
  Eigen::MatrixXd gram;
  Eigen::MatrixXd basis;

  double bracket(std::size_t a, std::size_t b, std::size_t g) const { return ad[a](g, b); }
};

// Summand index of each basis vector; kIsotropy marks vectors of the isotropy
// algebra k, which never enter a structural constant.
constexpr int kIsotropy = -1;
using Partition = std::vector<int>;

// Number of summands r; throws InvalidArgument when the labels are not
// surjective onto 0..r-1 or the size does not match.
std::size_t summand_count(const Partition& partition, std::size_t dim);

// Antisymmetry, Jacobi identity and symmetry of the Gram matrix; positive
// definiteness is reported separately because Killing-form grams of abelian
// algebras are legitimately degenerate.
std::vector<std::string> validate(const BracketTable& table, double tol = 1e-9);
bool is_positive_definite(const Eigen::MatrixXd& m);

// Bracket table of the real span of the given complex matrices under the
// commutator. Throws InvalidArgument if the span is not closed.
BracketTable from_matrices(const std::vector<Eigen::MatrixXcd>& basis);

// -B where B(X, Y) = tr(ad X ad Y) is the Killing form.
Eigen::MatrixXd killing_gram(const BracketTable& table);

// Gram-Schmidt with respect to gram inside each block of the partition.
// Throws DomainError when gram is not positive definite and InvalidArgument
// when two different blocks are not Q-orthogonal.
BracketTable orthonormalize(const BracketTable& table, const Partition& partition);

// Brute-force [ijk] = sum Q([e_a, e_b], e_c)^2 over Q-orthonormal bases of
// p_i, p_j, p_k, kept for every ordered (i, j, k).
class StructuralConstants {
 public:
  StructuralConstants(std::size_t r, std::vector<double> values);

  std::size_t summands() const { return r_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return values_[(i * r_ + j) * r_ + k]; }
  // Largest difference between an entry and a permutation of it.
  double max_asymmetry() const;
  // Orbit-averaged values keyed by sorted multiset, including zeros.
  std::map<TripleKey, double> by_multiset() const;

 private:
  std::size_t r_;
  std::vector<double> values_;
};

// Throws InvalidArgument unless gram is the identity to 1e-9.
StructuralConstants structural_constants(const BracketTable& table, const Partition& partition);

struct BuiltinAlgebra {
  std::string name;
  BracketTable table;
  Partition partition;
  std::vector<long> dims;
};

// su(n), 2 <= n <= 4, with Q = -Killing. For n >= 3 the partition is
// su(n-1) + C^{n-1} + R A_0 (A_0 the diagonal matrix commuting with su(n-1));
// su(2) is a single summand.
BuiltinAlgebra su(std::size_t n);

// so(2n), 2 <= n <= 4, with Q = -Killing, partitioned into the 2x2 root
// blocks p_ij (i < j, ordered lexicographically); the maximal torus T^n is
// the isotropy algebra.
BuiltinAlgebra so_even(std::size_t n);

// Index of block p_ij (i < j) in so_even(n).
std::size_t so_block_index(std::size_t n, std::size_t i, std::size_t j);

}  // namespace einstab::lie

#endif
