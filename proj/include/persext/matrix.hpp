#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "persext/fields.hpp"

// Dense exact matrices over a field context F (see fields.hpp) and the
// Gaussian-elimination kernel everything else is built on.  All returned bases
// are canonical: their transposes are in reduced row echelon form, so equal
// subspaces always get byte-identical bases.  Determinism matters more than
// speed here; problem sizes stay small.

namespace persext {

template <class F>
struct Matrix {
  using Elem = typename F::Elem;

  F field;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;  // row-major

  Matrix(F f, int r, int c)
      : field(f), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, f.zero()) {
    if (r < 0 || c < 0) throw std::invalid_argument("negative matrix shape");
  }

  Elem& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Elem& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static Matrix identity(F f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  static Matrix zero(F f, int r, int c) { return Matrix(f, r, c); }

  // Convenience for tests and builders: entries given as integers.
  static Matrix from_rows(F f, const std::vector<std::vector<long long>>& rows_in) {
    int r = static_cast<int>(rows_in.size());
    int c = r == 0 ? 0 : static_cast<int>(rows_in[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows_in[i].size()) != c)
        throw std::invalid_argument("ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = f.from_int(rows_in[i][j]);
    }
    return m;
  }

  bool is_zero() const {
    for (const Elem& x : a)
      if (!field.is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
};

template <class F>
bool operator==(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!x.field.eq(x.a[i], y.a[i])) return false;
  return true;
}

template <class F>
Matrix<F> operator*(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.cols != y.rows)
    throw std::invalid_argument("matrix product shape mismatch: " +
                                std::to_string(x.cols) + " vs " + std::to_string(y.rows));
  Matrix<F> z(x.field, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.field.is_zero(x.at(i, k))) continue;
      for (int j = 0; j < y.cols; ++j)
        z.at(i, j) = x.field.add(z.at(i, j), x.field.mul(x.at(i, k), y.at(k, j)));
    }
  return z;
}

template <class F>
Matrix<F> operator+(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix<F> z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.field.add(x.a[i], y.a[i]);
  return z;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix difference shape mismatch");
  Matrix<F> z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.field.sub(x.a[i], y.a[i]);
  return z;
}

template <class F>
Matrix<F> scalar_mul(const typename F::Elem& c, const Matrix<F>& x) {
  Matrix<F> z = x;
  for (auto& v : z.a) v = x.field.mul(c, v);
  return z;
}

// Columns of src become columns [c0, c0+src.cols) of dst; same for rows.
template <class F>
void set_block(Matrix<F>& dst, int r0, int c0, const Matrix<F>& src) {
  if (r0 + src.rows > dst.rows || c0 + src.cols > dst.cols)
    throw std::invalid_argument("block out of range");
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

template <class F>
void add_block(Matrix<F>& dst, int r0, int c0, const Matrix<F>& src) {
  if (r0 + src.rows > dst.rows || c0 + src.cols > dst.cols)
    throw std::invalid_argument("block out of range");
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j)
      dst.at(r0 + i, c0 + j) = dst.field.add(dst.at(r0 + i, c0 + j), src.at(i, j));
}

template <class F>
Matrix<F> hstack(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hstack row mismatch");
  Matrix<F> z(x.field, x.rows, x.cols + y.cols);
  set_block(z, 0, 0, x);
  set_block(z, 0, x.cols, y);
  return z;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& x, const Matrix<F>& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vstack column mismatch");
  Matrix<F> z(x.field, x.rows + y.rows, x.cols);
  set_block(z, 0, 0, x);
  set_block(z, x.rows, 0, y);
  return z;
}

template <class F>
struct Echelon {
  Matrix<F> r;              // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero row, strictly increasing
  int rank() const { return static_cast<int>(pivots.size()); }
};

// Gauss-Jordan with first-nonzero pivoting; deterministic and canonical.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  const F& f = m.field;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int r = row; r < m.rows; ++r)
      if (!f.is_zero(m.at(r, col))) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    typename F::Elem s = f.inv(m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = f.mul(s, m.at(row, j));
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || f.is_zero(m.at(r, col))) continue;
      typename F::Elem c = m.at(r, col);
      for (int j = col; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
int rank(const Matrix<F>& m) {
  return rref(m).rank();
}

// Basis of the column space as matrix columns; transpose is in RREF.
template <class F>
Matrix<F> image_basis(const Matrix<F>& m) {
  Echelon<F> e = rref(m.transpose());
  Matrix<F> b(m.field, m.rows, e.rank());
  for (int i = 0; i < e.rank(); ++i)
    for (int j = 0; j < m.rows; ++j) b.at(j, i) = e.r.at(i, j);
  return b;
}

// Basis of the null space {x : m x = 0} as matrix columns; transpose is in
// RREF, so each basis vector has leading coefficient 1 and the vectors are
// ordered by leading coordinate.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field;
  Echelon<F> e = rref(m);
  std::vector<int> free_cols;
  {
    std::size_t pi = 0;
    for (int c = 0; c < m.cols; ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  // Textbook kernel vectors, one per free column.
  Matrix<F> k(f, static_cast<int>(free_cols.size()), m.cols);
  for (int i = 0; i < static_cast<int>(free_cols.size()); ++i) {
    int fc = free_cols[i];
    k.at(i, fc) = f.one();
    for (int r = 0; r < e.rank(); ++r)
      k.at(i, e.pivots[r]) = f.neg(e.r.at(r, fc));
  }
  // Normalize the basis itself to echelon form.
  Echelon<F> ke = rref(std::move(k));
  Matrix<F> b(f, m.cols, ke.rank());
  for (int i = 0; i < ke.rank(); ++i)
    for (int j = 0; j < m.cols; ++j) b.at(j, i) = ke.r.at(i, j);
  return b;
}

template <class F>
int nullity(const Matrix<F>& m) {
  return m.cols - rank(m);
}

// One solution of m x = b with free variables set to zero, or nullopt.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const Matrix<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<F> aug(m.field, m.rows, m.cols + 1);
  set_block(aug, 0, 0, m);
  for (int i = 0; i < m.rows; ++i) aug.at(i, m.cols) = b[i];
  Echelon<F> e = rref(std::move(aug));
  for (int p : e.pivots)
    if (p == m.cols) return std::nullopt;  // inconsistent system
  std::vector<typename F::Elem> x(m.cols, m.field.zero());
  for (int r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.r.at(r, m.cols);
  return x;
}

// Columnwise solve: returns y with m y = b (each column solved independently).
template <class F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& m, const Matrix<F>& b) {
  if (m.rows != b.rows) throw std::invalid_argument("solve_matrix: row mismatch");
  Matrix<F> y(m.field, m.cols, b.cols);
  std::vector<typename F::Elem> col(m.rows, m.field.zero());
  for (int j = 0; j < b.cols; ++j) {
    for (int i = 0; i < m.rows; ++i) col[i] = b.at(i, j);
    auto x = solve(m, col);
    if (!x) return std::nullopt;
    for (int i = 0; i < m.cols; ++i) y.at(i, j) = (*x)[i];
  }
  return y;
}

// dim(ambient / span(basis columns)); basis columns must live in the ambient.
template <class F>
int quotient_dim(int ambient_dim, const Matrix<F>& basis) {
  if (basis.rows != ambient_dim)
    throw std::invalid_argument("quotient_dim: basis vectors of wrong dimension");
  return ambient_dim - rank(basis);
}

}  // namespace persext
