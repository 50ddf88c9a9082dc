#include "einstab/lie_constants.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "einstab/error.hpp"

namespace einstab::lie {

std::size_t summand_count(const Partition& partition, std::size_t dim) {
  if (partition.size() != dim)
    throw InvalidArgument("partition labels " + std::to_string(partition.size()) + " basis vectors, table has " +
                          std::to_string(dim));
  std::set<int> labels;
  for (int p : partition) {
    if (p < kIsotropy) throw InvalidArgument("negative summand label " + std::to_string(p));
    if (p != kIsotropy) labels.insert(p);
  }
  const std::size_t r = labels.size();
  if (r == 0) throw InvalidArgument("partition has no summands");
  if (*labels.rbegin() != static_cast<int>(r) - 1)
    throw InvalidArgument("partition labels are not surjective onto 0..r-1");
  return r;
}

bool is_positive_definite(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return true;
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) return false;
  // LLT accepts numerically singular matrices; require a healthy pivot too.
  const double scale = sym.cwiseAbs().maxCoeff();
  return llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 1e-12 * std::sqrt(scale);
}

std::vector<std::string> validate(const BracketTable& table, double tol) {
  std::vector<std::string> issues;
  const std::size_t n = table.dim;
  if (table.ad.size() != n) {
    issues.push_back("bracket table has " + std::to_string(table.ad.size()) + " ad matrices for dim " + std::to_string(n));
    return issues;
  }
  double scale = 0;
  for (const auto& m : table.ad) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  const double eps = tol * std::max(1.0, scale);
  auto antisymmetric = [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t g = 0; g < n; ++g)
          if (std::abs(table.bracket(a, b, g) + table.bracket(b, a, g)) > eps) return false;
    return true;
  };
  // Jacobi identity is equivalent to ad[e_a, e_b] = [ad e_a, ad e_b].
  auto jacobi = [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        Eigen::MatrixXd ad_ab = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t g = 0; g < n; ++g) ad_ab += table.bracket(a, b, g) * table.ad[g];
        const Eigen::MatrixXd comm = table.ad[a] * table.ad[b] - table.ad[b] * table.ad[a];
        if ((ad_ab - comm).cwiseAbs().maxCoeff() > eps * std::max(1.0, scale)) return false;
      }
    return true;
  };
  if (!antisymmetric()) issues.push_back("bracket is not antisymmetric");
  if (!jacobi()) issues.push_back("bracket violates the Jacobi identity");
  if (table.gram.rows() != static_cast<Eigen::Index>(n) || table.gram.cols() != static_cast<Eigen::Index>(n))
    issues.push_back("gram matrix has the wrong shape");
  else if ((table.gram - table.gram.transpose()).cwiseAbs().maxCoeff() > eps)
    issues.push_back("gram matrix is not symmetric");
  return issues;
}

BracketTable from_matrices(const std::vector<Eigen::MatrixXcd>& basis) {
  const std::size_t n = basis.size();
  auto inner = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    return (x.adjoint() * y).trace().real();
  };
  Eigen::MatrixXd g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g(a, b) = inner(basis[a], basis[b]);
  Eigen::LDLT<Eigen::MatrixXd> solver(g);

  BracketTable table;
  table.dim = n;
  table.ad.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Eigen::MatrixXcd c = basis[a] * basis[b] - basis[b] * basis[a];
      Eigen::VectorXd rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs(k) = inner(basis[k], c);
      const Eigen::VectorXd coords = solver.solve(rhs);
      Eigen::MatrixXcd residual = c;
      for (std::size_t k = 0; k < n; ++k) residual -= coords(k) * basis[k];
      if (residual.norm() > 1e-9 * (1.0 + c.norm()))
        throw InvalidArgument("matrix span is not closed under the commutator");
      table.ad[a].col(b) = coords;
    }
  table.gram = g;
  table.basis = Eigen::MatrixXd::Identity(n, n);
  return table;
}

Eigen::MatrixXd killing_gram(const BracketTable& table) {
  const std::size_t n = table.dim;
  Eigen::MatrixXd k(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) k(a, b) = k(b, a) = -(table.ad[a] * table.ad[b]).trace();
  return k;
}

BracketTable orthonormalize(const BracketTable& table, const Partition& partition) {
  const std::size_t n = table.dim;
  summand_count(partition, n);
  const Eigen::MatrixXd& q = table.gram;
  if (!is_positive_definite(q)) throw DomainError("gram matrix is not positive definite");
  const double scale = q.cwiseAbs().maxCoeff();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (partition[a] != partition[b] && std::abs(q(a, b)) > 1e-9 * scale)
        throw InvalidArgument("blocks " + std::to_string(partition[a]) + " and " + std::to_string(partition[b]) +
                              " are not Q-orthogonal");

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  std::set<int> blocks(partition.begin(), partition.end());
  for (int block : blocks) {
    std::vector<std::size_t> done;
    for (std::size_t a = 0; a < n; ++a) {
      if (partition[a] != block) continue;
      Eigen::VectorXd w = Eigen::VectorXd::Unit(n, a);
      for (std::size_t u : done) w -= (p.col(u).dot(q * w)) * p.col(u);
      w /= std::sqrt(w.dot(q * w));
      p.col(a) = w;
      done.push_back(a);
    }
  }

  const Eigen::MatrixXd p_inv = p.inverse();
  BracketTable out;
  out.dim = n;
  out.ad.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t alpha = 0; alpha < n; ++alpha)
      if (p(alpha, a) != 0.0) combo += p(alpha, a) * table.ad[alpha];
    out.ad[a] = p_inv * combo * p;
  }
  out.gram = p.transpose() * q * p;
  out.basis = table.basis * p;
  return out;
}

StructuralConstants::StructuralConstants(std::size_t r, std::vector<double> values)
    : r_(r), values_(std::move(values)) {
  if (values_.size() != r_ * r_ * r_) throw InvalidArgument("structural constant table has the wrong size");
}

double StructuralConstants::max_asymmetry() const {
  double worst = 0;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      for (std::size_t k = 0; k < r_; ++k) {
        std::array<std::size_t, 3> perm{i, j, k};
        std::sort(perm.begin(), perm.end());
        do {
          worst = std::max(worst, std::abs((*this)(i, j, k) - (*this)(perm[0], perm[1], perm[2])));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
  return worst;
}

std::map<TripleKey, double> StructuralConstants::by_multiset() const {
  std::map<TripleKey, double> out;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i; j < r_; ++j)
      for (std::size_t k = j; k < r_; ++k) {
        TripleKey perm{i, j, k};
        double sum = 0;
        int count = 0;
        do {
          sum += (*this)(perm[0], perm[1], perm[2]);
          ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.emplace(TripleKey{i, j, k}, sum / count);
      }
  return out;
}

StructuralConstants structural_constants(const BracketTable& table, const Partition& partition) {
  const std::size_t n = table.dim;
  const std::size_t r = summand_count(partition, n);
  if ((table.gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw InvalidArgument("basis is not Q-orthonormal; call orthonormalize first");
  std::vector<double> values(r * r * r, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    if (partition[a] == kIsotropy) continue;
    // m(g, b) = Q([e_a, e_b], e_g)
    const Eigen::MatrixXd m = table.gram.transpose() * table.ad[a];
    const std::size_t i = static_cast<std::size_t>(partition[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (partition[b] == kIsotropy) continue;
      const std::size_t j = static_cast<std::size_t>(partition[b]);
      for (std::size_t g = 0; g < n; ++g) {
        if (partition[g] == kIsotropy) continue;
        const std::size_t k = static_cast<std::size_t>(partition[g]);
        values[(i * r + j) * r + k] += m(g, b) * m(g, b);
      }
    }
  }
  return StructuralConstants(r, std::move(values));
}

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd unit(std::size_t n, std::size_t i, std::size_t j) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// i * (generalized Gell-Mann diagonal l), normalized so -tr(X^2) = 2.
Eigen::MatrixXcd su_diagonal(std::size_t n, std::size_t l) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
  for (std::size_t k = 0; k < l; ++k) m(k, k) = Complex(0, c);
  m(l, l) = Complex(0, -c * static_cast<double>(l));
  return m;
}

BuiltinAlgebra with_killing_metric(BuiltinAlgebra alg) {
  alg.table.gram = killing_gram(alg.table);
  alg.table = orthonormalize(alg.table, alg.partition);
  return alg;
}

}  // namespace

BuiltinAlgebra su(std::size_t n) {
  if (n < 2 || n > 4) throw RangeError("built-in su(n) requires 2 <= n <= 4");
  std::vector<Eigen::MatrixXcd> basis;
  Partition partition;
  const Complex i_unit(0, 1);
  auto add_pair = [&](std::size_t j, std::size_t k, int label) {
    basis.push_back(i_unit * (unit(n, j, k) + unit(n, k, j)));
    basis.push_back(unit(n, j, k) - unit(n, k, j));
    partition.push_back(label);
    partition.push_back(label);
  };
  const bool split = n >= 3;
  const std::size_t last = n - 1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) add_pair(j, k, split && k == last ? 1 : 0);
  for (std::size_t l = 1; l < n; ++l) {
    basis.push_back(su_diagonal(n, l));
    partition.push_back(split && l == last ? 2 : 0);
  }
  BuiltinAlgebra alg;
  alg.name = "su" + std::to_string(n);
  alg.table = from_matrices(basis);
  alg.partition = partition;
  if (split)
    alg.dims = {static_cast<long>((n - 1) * (n - 1) - 1), static_cast<long>(2 * (n - 1)), 1};
  else
    alg.dims = {3};
  return with_killing_metric(std::move(alg));
}

std::size_t so_block_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw InvalidArgument("so block index requires i < j < n");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += n - 1 - a;
  return idx + (j - i - 1);
}

BuiltinAlgebra so_even(std::size_t n) {
  if (n < 2 || n > 4) throw RangeError("built-in so(2n) requires 2 <= n <= 4");
  const std::size_t m = 2 * n;
  std::vector<Eigen::MatrixXcd> basis;
  Partition partition;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      basis.push_back(unit(m, a, b) - unit(m, b, a));
      const std::size_t i = a / 2;
      const std::size_t j = b / 2;
      partition.push_back(i == j ? kIsotropy : static_cast<int>(so_block_index(n, i, j)));
    }
  BuiltinAlgebra alg;
  alg.name = "so" + std::to_string(m);
  alg.table = from_matrices(basis);
  alg.partition = partition;
  alg.dims.assign(n * (n - 1) / 2, 4);
  return with_killing_metric(std::move(alg));
}

}  // namespace einstab::lie
