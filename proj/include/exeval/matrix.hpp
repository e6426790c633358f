#pragma once

#include <cstddef>
#include <vector>

namespace exeval {

// Minimal row-major dense matrix for the least-squares and network code.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
};

// C = A * B. The default entry point parallelizes over rows of A; the serial
// twin is the reference the tests compare against (per-row arithmetic is
// identical, so outputs match bitwise).
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_serial(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// A^T * A + ridge * I, for the regularized normal equations.
Matrix gram_ridge(const Matrix& a, double ridge);

// Solves A * X = B for symmetric positive definite A (Cholesky).
Matrix cholesky_solve(Matrix a, const Matrix& b);

}  // namespace exeval
