#include "hamil/linalg.hpp"

#include <algorithm>

#include "hamil/polynomial.hpp"

namespace hamil {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Expr>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Expr>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
      throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::normalized() const {
  Matrix n = *this;
  for (auto& e : n.data_) e = normalize(e);
  return n;
}

std::vector<Expr> Matrix::column(int j) const {
  std::vector<Expr> c;
  for (int i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in matrix product");
  Matrix p(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      std::vector<Expr> terms;
      for (int k = 0; k < a.cols_; ++k) terms.push_back(a(i, k) * b(k, j));
      p(i, j) = make_add(std::move(terms));
    }
  return p;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in matrix sum");
  Matrix s = a;
  for (std::size_t k = 0; k < s.data_.size(); ++k) s.data_[k] = a.data_[k] + b.data_[k];
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in matrix difference");
  Matrix s = a;
  for (std::size_t k = 0; k < s.data_.size(); ++k) s.data_[k] = a.data_[k] - b.data_[k];
  return s;
}

namespace {

using RMat = std::vector<std::vector<RatFunc>>;

RMat to_rmat(const Matrix& m) {
  RMat r(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)].push_back(to_ratfunc(m(i, j)));
  return r;
}

RatFunc tidy(RatFunc r) {
  r.cancel();
  return r;
}

// Reduced row echelon form in place; returns pivot columns.  `det` tracks the
// product of pivots and row-swap signs when provided.
std::vector<int> rref(RMat& a, int ncols, RatFunc* det = nullptr) {
  std::vector<int> pivots;
  std::size_t row = 0;
  const std::size_t nrows = a.size();
  for (int col = 0; col < ncols && row < nrows; ++col) {
    const auto c = static_cast<std::size_t>(col);
    std::size_t p = row;
    while (p < nrows && a[p][c].is_zero()) ++p;
    if (p == nrows) continue;
    if (p != row) {
      std::swap(a[p], a[row]);
      if (det) *det = -*det;
    }
    RatFunc inv = a[row][c].inverse();
    if (det) *det = tidy(*det * a[row][c]);
    for (auto& v : a[row]) v = tidy(v * inv);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      RatFunc f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k)
        if (!a[row][k].is_zero()) a[r][k] = tidy(a[r][k] - f * a[row][k]);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Expr det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  RMat a = to_rmat(m);
  RatFunc d(Poly(1));
  auto piv = rref(a, m.cols(), &d);
  if (static_cast<int>(piv.size()) < m.rows()) return 0;
  return d.to_expr();
}

Matrix remove_rows(const Matrix& m, const std::vector<int>& rows) {
  for (int r : rows)
    if (r < 0 || r >= m.rows()) throw std::invalid_argument("row index out of range");
  std::vector<std::vector<Expr>> keep;
  for (int i = 0; i < m.rows(); ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    std::vector<Expr> row;
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    keep.push_back(std::move(row));
  }
  Matrix out(static_cast<int>(keep.size()), m.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = keep[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

Expr minor_without_rows(const Matrix& m, int i, int j) {
  if (i == j) throw std::invalid_argument("minor needs two distinct rows");
  Matrix sub = remove_rows(m, {i, j});
  if (sub.rows() != sub.cols()) throw std::invalid_argument("minor is not square");
  return det(sub);
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const int n = m.rows();
  RMat a = to_rmat(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(RatFunc(Poly(i == j ? 1 : 0)));
  auto piv = rref(a, n);
  if (static_cast<int>(piv.size()) < n) throw SingularMatrix("matrix is singular");
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)].to_expr();
  if (!equal_exact(m * inv, Matrix::identity(n))) throw SingularMatrix("inverse failed the product check");
  return inv;
}

std::vector<std::vector<Expr>> nullspace(const Matrix& m) {
  RMat a = to_rmat(m);
  auto piv = rref(a, m.cols());
  std::vector<std::vector<Expr>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
    std::vector<Expr> v(static_cast<std::size_t>(m.cols()), Expr(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      v[static_cast<std::size_t>(piv[r])] = (-a[r][static_cast<std::size_t>(free)]).to_expr();
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank(const Matrix& m) {
  RMat a = to_rmat(m);
  return static_cast<int>(rref(a, m.cols()).size());
}

std::vector<Expr> solve(const Matrix& m, const std::vector<Expr>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("shape mismatch in solve");
  RMat a = to_rmat(m);
  for (std::size_t i = 0; i < b.size(); ++i) a[i].push_back(to_ratfunc(b[i]));
  auto piv = rref(a, m.cols() + 1);
  if (!piv.empty() && piv.back() == m.cols()) throw std::runtime_error("inconsistent linear system");
  std::vector<Expr> x(static_cast<std::size_t>(m.cols()), Expr(0));
  for (std::size_t r = 0; r < piv.size(); ++r)
    x[static_cast<std::size_t>(piv[r])] = a[r][static_cast<std::size_t>(m.cols())].to_expr();
  return x;
}

bool equal_exact(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!normalizes_to_zero(a(i, j) - b(i, j))) return false;
  return true;
}

}  // namespace hamil
