#pragma once

// Dense matrices over the exact integers, row-major. The sizes here are tiny
// (degree <= 16), so no attention is paid to cache behavior or sparsity.

#include <initializer_list>
#include <string>
#include <vector>

#include "normring/integers.hpp"

namespace normring {

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) fail(errc::validation_error, "negative matrix dimension");
  }
  IntMat(int rows, int cols, std::initializer_list<Int> entries) : IntMat(rows, cols) {
    size_t i = 0;
    for (const Int& v : entries) e_.at(i++) = v;
  }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  // Lexicographic by shape then entries; used only for deterministic ordering.
  bool operator<(const IntMat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return e_ < o.e_;
  }

  std::vector<Int> row(int i) const {
    std::vector<Int> out(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) out[static_cast<size_t>(j)] = (*this)(i, j);
    return out;
  }

  void set_row(int i, const std::vector<Int>& v) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[static_cast<size_t>(j)];
  }

  void swap_rows(int i, int k) {
    for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  // row i -= q * row k
  void submul_row(int i, int k, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < cols_; ++j) (*this)(i, j) -= q * (*this)(k, j);
  }

  void negate_row(int i) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  IntMat operator*(const IntMat& o) const {
    if (cols_ != o.rows_) fail(errc::dimension_mismatch, "matrix product shape");
    IntMat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  IntMat scaled(const Int& c) const {
    IntMat out = *this;
    for (Int& v : out.e_) v *= c;
    return out;
  }

  IntMat transposed() const {
    IntMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  // Stack other's rows below this one's.
  IntMat stacked(const IntMat& o) const {
    if (cols_ != o.cols_) fail(errc::dimension_mismatch, "stack column mismatch");
    IntMat out(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(rows_ + i, j) = o(i, j);
    return out;
  }

  Int content() const {
    Int g = 0;
    for (const Int& v : e_) {
      g = gcd(g, v);
      if (g == 1) break;
    }
    return g;
  }

  bool is_zero_row(int i) const {
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) return false;
    return true;
  }

  // Fraction-free Gaussian elimination (Bareiss); exact determinant.
  Int det() const {
    if (rows_ != cols_) fail(errc::dimension_mismatch, "determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMat a = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (a(k, k) == 0) {
        int piv = -1;
        for (int i = k + 1; i < n; ++i)
          if (a(i, k) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        a.swap_rows(k, piv);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
    }
    return s + "]";
  }

 private:
  int rows_, cols_;
  std::vector<Int> e_;
};

inline IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) fail(errc::validation_error, "no rows");
  IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

}  // namespace normring
