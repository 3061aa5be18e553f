#pragma once

// Exact linear algebra over expression matrices.  Entries are brought to
// rational normal form and eliminated exactly; pivots are accepted only when
// they normalize to something nonzero.

#include <stdexcept>
#include <vector>

#include "hamil/expr.hpp"

namespace hamil {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(std::initializer_list<std::initializer_list<Expr>> rows);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Expr>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Expr& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Expr& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Matrix transpose() const;
  Matrix normalized() const;
  std::vector<Expr> column(int j) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Expr> data_;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument on shape mismatch.
Expr det(const Matrix& m);
Matrix remove_rows(const Matrix& m, const std::vector<int>& rows);
// det of m with rows i and j removed (the square (n-2)x(n-2) minor P_[i,j]).
Expr minor_without_rows(const Matrix& m, int i, int j);
// Throws SingularMatrix; the result is checked against m * inv == I exactly.
Matrix inverse(const Matrix& m);
// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<Expr>> nullspace(const Matrix& m);
int rank(const Matrix& m);
// One solution of m x = b; throws std::runtime_error when inconsistent.
std::vector<Expr> solve(const Matrix& m, const std::vector<Expr>& b);
// Exact equality after normalization.
bool equal_exact(const Matrix& a, const Matrix& b);

}  // namespace hamil
