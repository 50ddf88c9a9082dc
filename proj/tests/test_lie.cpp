#include <doctest.h>

#include <cmath>

#include "einstab/error.hpp"
#include "einstab/jacobi.hpp"
#include "einstab/lie_constants.hpp"
#include "support.hpp"

using namespace einstab;
using namespace einstab::testing;

namespace {

SquareMatrix random_symmetric(std::size_t n) {
  SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = uniform(-5, 5);
  return a;
}

// su(2) with [e1, e2] = 2 e3 and cyclic permutations (Pauli matrices / i).
lie::BracketTable su2_pauli() {
  lie::BracketTable t;
  t.dim = 3;
  t.ad.assign(3, Eigen::MatrixXd::Zero(3, 3));
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    t.ad[a](c, b) = 2;   // [e_a, e_b] = 2 e_c
    t.ad[a](b, c) = -2;  // [e_a, e_c] = -2 e_b
  }
  t.gram = Eigen::MatrixXd::Identity(3, 3);
  t.basis = Eigen::MatrixXd::Identity(3, 3);
  return t;
}

lie::BracketTable abelian(std::size_t n) {
  lie::BracketTable t;
  t.dim = n;
  t.ad.assign(n, Eigen::MatrixXd::Zero(n, n));
  t.gram = Eigen::MatrixXd::Identity(n, n);
  t.basis = Eigen::MatrixXd::Identity(n, n);
  return t;
}

}  // namespace

TEST_SUITE("jacobi") {
  TEST_CASE("trivial matrices") {
    const auto z = jacobi_eigen(SquareMatrix(3));
    for (double v : z.values) CHECK(v == 0);
    SquareMatrix d(3);
    d(0, 0) = 3;
    d(1, 1) = -1;
    d(2, 2) = 2;
    const auto e = jacobi_eigen(d);
    CHECK(e.values == std::vector<double>{-1, 2, 3});
    CHECK(jacobi_eigen(SquareMatrix(0)).values.empty());
  }

  TEST_CASE("reconstruction and orthonormality") {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = static_cast<std::size_t>(uniform_int(1, 7));
      const SquareMatrix a = random_symmetric(n);
      const auto e = jacobi_eigen(a);
      REQUIRE(e.values.size() == n);
      CHECK(std::is_sorted(e.values.begin(), e.values.end()));
      const double scale = a.max_abs();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double r = 0, dot = 0;
          for (std::size_t k = 0; k < n; ++k) {
            r += e.vectors[k][i] * e.values[k] * e.vectors[k][j];
            dot += e.vectors[i][k] * e.vectors[j][k];
          }
          CHECK(std::abs(r - a(i, j)) <= 1e-12 * scale);
          CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12);
        }
    }
  }
}

TEST_SUITE("lie_constants") {
  TEST_CASE("tables satisfy the Lie axioms") {
    CHECK(lie::validate(su2_pauli()).empty());
    CHECK(lie::validate(lie::su(3).table).empty());
    CHECK(lie::validate(lie::so_even(4).table).empty());
    lie::BracketTable broken = su2_pauli();
    broken.ad[0](2, 1) = 3;
    CHECK_FALSE(lie::validate(broken).empty());
  }

  TEST_CASE("Killing forms") {
    CHECK(lie::killing_gram(abelian(3)).isZero());
    CHECK_FALSE(lie::is_positive_definite(lie::killing_gram(abelian(3))));
    CHECK(lie::killing_gram(su2_pauli()).isApprox(8 * Eigen::MatrixXd::Identity(3, 3), 1e-12));
    // su(3): -B(X, Y) = -6 tr(XY); on a basis with -tr(XY) = 2 delta this is 12 I
    std::vector<Eigen::MatrixXcd> basis;
    const std::complex<double> i(0, 1);
    auto unit = [](int a, int b) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
      m(a, b) = 1;
      return m;
    };
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        basis.push_back(i * (unit(a, b) + unit(b, a)));
        basis.push_back(unit(a, b) - unit(b, a));
      }
    basis.push_back(i * (unit(0, 0) - unit(1, 1)));
    basis.push_back(i * (unit(0, 0) + unit(1, 1) - 2.0 * unit(2, 2)) / std::sqrt(3.0));
    const lie::BracketTable su3 = lie::from_matrices(basis);
    CHECK(lie::killing_gram(su3).isApprox(12 * Eigen::MatrixXd::Identity(8, 8), 1e-10));
  }

  TEST_CASE("from_matrices rejects spans that are not closed") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2), b = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    CHECK_THROWS_AS(lie::from_matrices({a, b}), InvalidArgument);
  }

  TEST_CASE("orthonormalize") {
    lie::BracketTable t = su2_pauli();
    const auto same = lie::orthonormalize(t, {0, 0, 0});
    CHECK(same.gram.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));
    CHECK(same.basis.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));

    t.gram = 4 * Eigen::MatrixXd::Identity(3, 3);
    const auto half = lie::orthonormalize(t, {0, 0, 0});
    CHECK(half.basis.isApprox(0.5 * Eigen::MatrixXd::Identity(3, 3), 1e-12));
    CHECK(half.gram.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-12));

    t.gram = lie::killing_gram(su2_pauli());
    const auto killing = lie::orthonormalize(t, {0, 0, 0});
    // [f1, f2] = c f3 with c = 2 / sqrt(8)
    CHECK(killing.bracket(0, 1, 2) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(killing.bracket(1, 2, 0) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(killing.bracket(0, 1, 0) == doctest::Approx(0).epsilon(1e-14));

    t.gram = -Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(lie::orthonormalize(t, {0, 0, 0}), DomainError);
  }

  TEST_CASE("structural constants of the built-in algebras") {
    const auto su2 = lie::su(2);
    const auto c2 = lie::structural_constants(su2.table, su2.partition);
    CHECK(c2(0, 0, 0) == doctest::Approx(3).epsilon(1e-12));

    const auto su3 = lie::su(3);
    CHECK(su3.dims == std::vector<long>{3, 4, 1});
    const auto c3 = lie::structural_constants(su3.table, su3.partition);
    CHECK(c3.max_asymmetry() < 1e-9);
    const auto m3 = c3.by_multiset();
    CHECK(m3.at({0, 0, 0}) == doctest::Approx(2).epsilon(1e-10));
    CHECK(m3.at({0, 1, 1}) == doctest::Approx(1).epsilon(1e-10));
    CHECK(m3.at({1, 1, 2}) == doctest::Approx(1).epsilon(1e-10));
    for (const auto& [key, v] : m3) {
      CHECK(v >= -1e-12);
      if (key != TripleKey{0, 0, 0} && key != TripleKey{0, 1, 1} && key != TripleKey{1, 1, 2}) CHECK(std::abs(v) < 1e-10);
    }

    const auto so8 = lie::so_even(4);
    CHECK(so8.dims == std::vector<long>(6, 4));
    const auto c8 = lie::structural_constants(so8.table, so8.partition).by_multiset();
    CHECK(c8.at(make_triple_key(lie::so_block_index(4, 0, 1), lie::so_block_index(4, 1, 2),
                                lie::so_block_index(4, 0, 2))) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    int nonzero = 0;
    for (const auto& [key, v] : c8)
      if (std::abs(v) > 1e-10) {
        ++nonzero;
        CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
      }
    CHECK(nonzero == 4);  // one per triangle {a, b, c} in {0..3}
  }

  TEST_CASE("abelian algebra gives zeros") {
    const auto c = lie::structural_constants(abelian(4), {0, 0, 1, 1});
    for (const auto& [key, v] : c.by_multiset()) CHECK(v == 0);
  }

  TEST_CASE("merging summands adds constants") {
    const auto su3 = lie::su(3);
    const auto fine = lie::structural_constants(su3.table, su3.partition);
    lie::Partition merged(su3.partition.size());
    for (std::size_t a = 0; a < merged.size(); ++a) merged[a] = su3.partition[a] == lie::kIsotropy ? lie::kIsotropy : 0;
    const auto coarse = lie::structural_constants(su3.table, merged);
    double total = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) total += fine(i, j, k);
    CHECK(coarse(0, 0, 0) == doctest::Approx(total).epsilon(1e-10));
  }

  TEST_CASE("scaling Q by c scales constants by 1/c") {
    const auto su3 = lie::su(3);
    const auto base = lie::structural_constants(su3.table, su3.partition);
    for (double c : {0.5, 2.0, 7.0}) {
      lie::BracketTable scaled = su3.table;
      scaled.gram *= c;
      const auto t = lie::orthonormalize(scaled, su3.partition);
      const auto s = lie::structural_constants(t, su3.partition);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k) CHECK(s(i, j, k) == doctest::Approx(base(i, j, k) / c).epsilon(1e-10));
    }
  }

  TEST_CASE("non-orthonormal basis is rejected") {
    lie::BracketTable t = su2_pauli();
    t.gram *= 3;
    CHECK_THROWS_AS(lie::structural_constants(t, {0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(lie::summand_count({0, 2, 2}, 3), InvalidArgument);
  }

  TEST_CASE("collapsed SO(2n) constants agree with the block sum at n = 4") {
    // x blocks: p_1j (j = 2..4); y blocks: the rest. Aggregate [ijk] over
    // ordered block triples equals the orbit-expanded collapsed constants.
    const auto so8 = lie::so_even(4);
    const auto c = lie::structural_constants(so8.table, so8.partition);
    auto group = [](std::size_t block) {
      return block < 3 ? 0u : 1u;  // blocks p_01, p_02, p_03 come first
    };
    double agg[2][2][2] = {};
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k) agg[group(i)][group(j)][group(k)] += c(i, j, k);
    CHECK(agg[0][0][1] == doctest::Approx(4.0).epsilon(1e-10));  // 2(n-2) at n=4
    CHECK(agg[0][1][0] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(agg[1][1][1] == doctest::Approx(4.0).epsilon(1e-10));        // 2(n-2)(n-3) at n=4
    CHECK(std::abs(agg[0][0][0]) < 1e-10);
    CHECK(std::abs(agg[0][1][1]) < 1e-10);
  }
}
