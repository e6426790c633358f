#include "exeval/matrix.hpp"

#include <cmath>

#include "exeval/error.hpp"
#include "exeval/parallel.hpp"

namespace exeval {

namespace {

inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
  const double* arow = a.row(i);
  double* crow = c.row(i);
  for (std::size_t k = 0; k < a.cols; ++k) {
    const double aik = arow[k];
    if (aik == 0.0) continue;
    const double* brow = b.row(k);
    for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error(Errc::DimensionMismatch, "matmul shape");
  Matrix c(a.rows, b.cols);
  parallel_for(a.rows, [&](std::size_t i) { matmul_row(a, b, c, i); });
  return c;
}

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error(Errc::DimensionMismatch, "matmul shape");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) matmul_row(a, b, c, i);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Matrix gram_ridge(const Matrix& a, double ridge) {
  Matrix g(a.cols, a.cols);
  parallel_for(a.cols, [&](std::size_t i) {
    for (std::size_t j = i; j < a.cols; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < a.rows; ++r) s += a.at(r, i) * a.at(r, j);
      g.at(i, j) = s;
    }
  });
  for (std::size_t i = 0; i < a.cols; ++i) {
    for (std::size_t j = 0; j < i; ++j) g.at(i, j) = g.at(j, i);
    g.at(i, i) += ridge;
  }
  return g;
}

Matrix cholesky_solve(Matrix a, const Matrix& b) {
  if (a.rows != a.cols || a.rows != b.rows)
    throw Error(Errc::DimensionMismatch, "cholesky_solve shape");
  const std::size_t n = a.rows;
  // In-place lower-triangular factorization.
  for (std::size_t j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (d <= 0.0) throw std::runtime_error("cholesky_solve: matrix not positive definite");
    const double ljj = std::sqrt(d);
    a.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
      a.at(i, j) = s / ljj;
    }
  }
  Matrix x = b;
  // Forward substitution L y = b, then back substitution L^T x = y.
  for (std::size_t c = 0; c < b.cols; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x.at(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= a.at(i, k) * x.at(k, c);
      x.at(i, c) = s / a.at(i, i);
    }
    for (std::size_t ii = n; ii > 0; --ii) {
      const std::size_t i = ii - 1;
      double s = x.at(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= a.at(k, i) * x.at(k, c);
      x.at(i, c) = s / a.at(i, i);
    }
  }
  return x;
}

}  // namespace exeval
