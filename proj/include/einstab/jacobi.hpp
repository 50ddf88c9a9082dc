#ifndef EINSTAB_JACOBI_HPP
#define EINSTAB_JACOBI_HPP

#include <cstddef>
#include <vector>

namespace einstab {

// Small dense square matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit length
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal part falls below
// rel_tol * max|a_ij| (or is exactly zero). Only the upper triangle is read.
EigenDecomposition jacobi_eigen(const SquareMatrix& a, double rel_tol = 1e-13, int max_sweeps = 100);

}  // namespace einstab

#endif
