#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace quivermod {

// Dense matrix over an exact field.  Row-major; deliberately small and
// deterministic rather than fast: pivoting always picks the first usable row,
// never the numerically largest, so results are reproducible bit for bit.
template <class F>
class Matrix {
 public:
  using V = typename F::value_type;

  Matrix() = default;
  Matrix(const F& f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        data_(std::size_t(rows) * cols, f.zero()) {}

  static Matrix identity(const F& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  V& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const V& at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  bool is_zero() const {
    for (const V& v : data_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix mul(const Matrix& b) const {
    if (cols_ != b.rows_) throw internal_error("matrix product shape mismatch");
    Matrix r(field_, rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const V& f = at(i, k);
        if (field_.is_zero(f)) continue;
        for (int j = 0; j < b.cols_; ++j)
          r.at(i, j) = field_.add(r.at(i, j), field_.mul(f, b.at(k, j)));
      }
    return r;
  }

  Matrix add(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw internal_error("matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
      r.data_[i] = field_.add(r.data_[i], b.data_[i]);
    return r;
  }

  Matrix sub(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw internal_error("matrix difference shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
      r.data_[i] = field_.sub(r.data_[i], b.data_[i]);
    return r;
  }

  Matrix scale(const V& c) const {
    Matrix r = *this;
    for (V& v : r.data_) v = field_.mul(v, c);
    return r;
  }

  // [this | b] side by side.
  Matrix hstack(const Matrix& b) const {
    if (rows_ != b.rows_) throw internal_error("hstack shape mismatch");
    Matrix r(field_, rows_, cols_ + b.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (int j = 0; j < b.cols_; ++j) r.at(i, cols_ + j) = b.at(i, j);
    }
    return r;
  }

  // [this; b] stacked.
  Matrix vstack(const Matrix& b) const {
    if (cols_ != b.cols_) throw internal_error("vstack shape mismatch");
    Matrix r(field_, rows_ + b.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = b.at(i, j);
    return r;
  }

  Matrix submatrix(int r0, int c0, int nr, int nc) const {
    Matrix r(field_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }

  // In-place reduced row echelon form; returns the pivot column indices.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int p = -1;
      for (int i = r; i < rows_; ++i)
        if (!field_.is_zero(at(i, c))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
      V piv_inv = field_.inv(at(r, c));
      for (int j = c; j < cols_; ++j) at(r, j) = field_.mul(at(r, j), piv_inv);
      for (int i = 0; i < rows_; ++i) {
        if (i == r) continue;
        V f = at(i, c);
        if (field_.is_zero(f)) continue;
        for (int j = c; j < cols_; ++j)
          at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Matrix c = *this;
    return static_cast<int>(c.rref().size());
  }

  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  Matrix inverse() const {
    if (rows_ != cols_) throw internal_error("inverse of non-square matrix");
    Matrix aug = hstack(identity(field_, rows_));
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) != rows_ || piv.back() >= rows_)
      throw genericity_error("matrix is singular");
    return aug.submatrix(0, cols_, rows_, cols_);
  }

  // Columns spanning the kernel, in the order induced by the free columns.
  Matrix kernel_basis() const {
    Matrix red = *this;
    auto piv = red.rref();
    std::vector<char> is_piv(cols_, 0);
    for (int c : piv) is_piv[c] = 1;
    int nullity = cols_ - static_cast<int>(piv.size());
    Matrix k(field_, cols_, nullity);
    int out = 0;
    for (int c = 0; c < cols_; ++c) {
      if (is_piv[c]) continue;
      k.at(c, out) = field_.one();
      for (int i = 0; i < static_cast<int>(piv.size()); ++i)
        if (piv[i] < c)
          k.at(piv[i], out) = field_.neg(red.at(i, c));
      ++out;
    }
    return k;
  }

  // Rows spanning the left kernel (full row rank, rows() - rank() of them).
  Matrix left_kernel_basis() const {
    Matrix aug = hstack(identity(field_, rows_));
    aug.rref();
    // Rows whose first cols_ entries vanished carry the left-kernel vectors.
    std::vector<int> zero_rows;
    for (int i = 0; i < rows_; ++i) {
      bool zero = true;
      for (int j = 0; j < cols_ && zero; ++j)
        if (!field_.is_zero(aug.at(i, j))) zero = false;
      if (zero) zero_rows.push_back(i);
    }
    Matrix out(field_, static_cast<int>(zero_rows.size()), rows_);
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < rows_; ++j)
        out.at(i, j) = aug.at(zero_rows[i], cols_ + j);
    return out;
  }

  // Unique solution X of (*this) X = B; requires full column rank and
  // consistency (both are checked).
  Matrix solve_unique(const Matrix& b) const {
    if (rows_ != b.rows()) throw internal_error("solve shape mismatch");
    Matrix aug = hstack(b);
    auto piv = aug.rref();
    int lead = 0;
    for (int c : piv)
      if (c < cols_) ++lead;
    if (lead != cols_)
      throw internal_error("solve_unique: matrix does not have full column rank");
    for (int c : piv)
      if (c >= cols_) throw internal_error("solve_unique: inconsistent system");
    Matrix x(field_, cols_, b.cols());
    for (int i = 0; i < cols_; ++i)
      for (int j = 0; j < b.cols(); ++j) x.at(i, j) = aug.at(i, cols_ + j);
    return x;
  }

 private:
  F field_{};
  int rows_ = 0;
  int cols_ = 0;
  std::vector<V> data_;
};

}  // namespace quivermod
