#pragma once

// Canonical Hermite-form lattices over Z with a single positive denominator,
// plus Smith form and mod-p kernels. Everything is exact; every op returns
// the unique canonical representative so lattice equality is matrix equality.
//
// HNF convention: row-style, upper-triangular, positive pivots, entries above
// each pivot reduced into [0, pivot).

#include <algorithm>
#include <optional>
#include <vector>

#include "normring/intmat.hpp"

namespace normring {

namespace detail {

// Euclidean row elimination. Returns the row-echelon matrix (pivot rows on
// top, zero rows at the bottom) and, when transform != nullptr, the unimodular
// U with U * M == result. Deterministic: pivot choice is min |entry|, lowest
// row index on ties.
inline IntMat echelonize(IntMat m, IntMat* transform, int* rank_out) {
  int rows = m.rows(), cols = m.cols();
  IntMat u = IntMat::identity(rows);
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i) {
        if (m(i, j) == 0) continue;
        if (piv < 0 || abs(m(i, j)) < abs(m(piv, j))) piv = i;
      }
      if (piv < 0) break;
      if (piv != r) {
        m.swap_rows(r, piv);
        u.swap_rows(r, piv);
      }
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (m(i, j) == 0) continue;
        Int q = m(i, j) / m(r, j);  // truncated: |remainder| < |pivot|
        m.submul_row(i, r, q);
        u.submul_row(i, r, q);
        if (m(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(r, j) != 0) {
      if (m(r, j) < 0) {
        m.negate_row(r);
        u.negate_row(r);
      }
      ++r;
    }
  }
  if (rank_out) *rank_out = r;
  if (transform) *transform = u;
  return m;
}

}  // namespace detail

// Canonical Hermite basis of the row lattice of M. M may have more rows than
// columns; its rank must equal its column count.
inline IntMat hnf(const IntMat& m) {
  int rank = 0;
  IntMat h = detail::echelonize(m, nullptr, &rank);
  int n = m.cols();
  if (rank < n) fail(errc::rank_deficient, "row lattice has rank " + std::to_string(rank));
  IntMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = h(i, j);
  // reduce entries above each pivot into [0, pivot); ascending keeps earlier
  // columns final because row j starts at column j
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Int q = fdiv(out(i, j), out(j, j));
      out.submul_row(i, j, q);
    }
  return out;
}

// Basis of the integer left kernel {v : v * M == 0}; echelon rows with
// positive pivots. Zero rows when the kernel is trivial.
inline IntMat left_kernel(const IntMat& m) {
  int rank = 0;
  IntMat u;
  detail::echelonize(m, &u, &rank);
  int k = m.rows() - rank;
  IntMat ker(k, m.rows());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m.rows(); ++j) ker(i, j) = u(rank + i, j);
  if (k == 0) return ker;
  int kr = 0;
  IntMat h = detail::echelonize(ker, nullptr, &kr);
  IntMat out(kr, m.rows());
  for (int i = 0; i < kr; ++i)
    for (int j = 0; j < m.rows(); ++j) out(i, j) = h(i, j);
  return out;
}

// Invariant factors d1 | d2 | ... | dn of a square full-rank matrix.
inline std::vector<Int> snf(const IntMat& m_in) {
  if (m_in.rows() != m_in.cols()) fail(errc::dimension_mismatch, "snf expects square matrix");
  int n = m_in.rows();
  IntMat a = m_in;
  auto col_submul = [&](int j, int k, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < n; ++i) a(i, j) -= q * a(i, k);
  };
  auto col_swap = [&](int j, int k) {
    for (int i = 0; i < n; ++i) std::swap(a(i, j), a(i, k));
  };
  for (int t = 0; t < n; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) { pi = i; pj = j; }
      if (pi < 0) fail(errc::rank_deficient, "matrix is singular");
      if (pi != t) a.swap_rows(t, pi);
      if (pj != t) col_swap(t, pj);
      bool again = false;
      for (int i = t + 1; i < n; ++i) {
        Int q = a(i, t) / a(t, t);
        a.submul_row(i, t, q);
        if (a(i, t) != 0) again = true;
      }
      for (int j = t + 1; j < n; ++j) {
        Int q = a(t, j) / a(t, t);
        col_submul(j, t, q);
        if (a(t, j) != 0) again = true;
      }
      if (again) continue;
      bool fixed = true;
      for (int i = t + 1; i < n && fixed; ++i)
        for (int j = t + 1; j < n && fixed; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.submul_row(t, i, Int(-1));  // fold row i into row t, redo
            fixed = false;
          }
      if (fixed) break;
    }
  }
  std::vector<Int> d(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) d[static_cast<size_t>(t)] = abs(a(t, t));
  return d;
}

// Reduced row echelon form over F_p (zero rows dropped); deterministic.
inline IntMat rref_mod_p(const IntMat& m, const Int& p) {
  IntMat a = m;
  int rows = a.rows(), cols = a.cols();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = mod_reduce(a(i, j), p);
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, j) != 0) { piv = i; break; }
    if (piv < 0) continue;
    a.swap_rows(r, piv);
    Int inv = inv_mod(a(r, j), p);
    for (int c = 0; c < cols; ++c) a(r, c) = mod_reduce(a(r, c) * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, j) == 0) continue;
      Int f = a(i, j);
      for (int c = 0; c < cols; ++c) a(i, c) = mod_reduce(a(i, c) - f * a(r, c), p);
    }
    ++r;
  }
  IntMat out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

// Row basis of {v : v * M == 0 mod p}, in reduced echelon form over F_p.
inline IntMat kernel_mod_p(const IntMat& m, const Int& p) {
  if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
  int rows = m.rows(), cols = m.cols();
  // Row-reduce [M | I] over F_p; rows whose M-part vanishes give the kernel.
  IntMat a = m;
  IntMat u = IntMat::identity(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = mod_reduce(a(i, j), p);
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, j) != 0) { piv = i; break; }
    if (piv < 0) continue;
    a.swap_rows(r, piv);
    u.swap_rows(r, piv);
    Int inv = inv_mod(a(r, j), p);
    for (int c = 0; c < cols; ++c) a(r, c) = mod_reduce(a(r, c) * inv, p);
    for (int c = 0; c < rows; ++c) u(r, c) = mod_reduce(u(r, c) * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, j) == 0) continue;
      Int f = a(i, j);
      for (int c = 0; c < cols; ++c) a(i, c) = mod_reduce(a(i, c) - f * a(r, c), p);
      for (int c = 0; c < rows; ++c) u(i, c) = mod_reduce(u(i, c) - f * u(r, c), p);
    }
    ++r;
  }
  IntMat ker(rows - r, rows);
  for (int i = r; i < rows; ++i)
    for (int j = 0; j < rows; ++j) ker(i - r, j) = u(i, j);
  return rref_mod_p(ker, p);
}

// ---------------------------------------------------------------------------
// HnfLattice: full-rank lattice given by a canonical Hermite basis over a
// positive denominator, normalized so gcd(content(basis), den) == 1.
// ---------------------------------------------------------------------------

class HnfLattice {
 public:
  HnfLattice() = default;

  // Span of the given rows divided by den. Rows may be redundant; rank must
  // be full.
  static HnfLattice from_rows(const IntMat& rows, Int den) {
    if (den == 0) fail(errc::validation_error, "zero denominator");
    IntMat b = rows;
    if (den < 0) {
      den = -den;
      b = b.scaled(Int(-1));
    }
    HnfLattice out;
    out.basis_ = hnf(b);
    out.den_ = den;
    out.normalize();
    return out;
  }

  static HnfLattice standard(int n) { return from_rows(IntMat::identity(n), Int(1)); }

  const IntMat& basis() const { return basis_; }
  const Int& den() const { return den_; }
  int dim() const { return basis_.rows(); }

  Int det_basis() const {
    Int d = 1;
    for (int i = 0; i < dim(); ++i) d *= basis_(i, i);
    return d;
  }

  std::vector<Rat> basis_row(int i) const {
    std::vector<Rat> out(static_cast<size_t>(dim()));
    for (int j = 0; j < dim(); ++j) out[static_cast<size_t>(j)] = Rat(basis_(i, j), den_);
    return out;
  }

  bool operator==(const HnfLattice& o) const { return den_ == o.den_ && basis_ == o.basis_; }
  bool operator!=(const HnfLattice& o) const { return !(*this == o); }
  bool operator<(const HnfLattice& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    return basis_ < o.basis_;
  }

  HnfLattice scaled(const Rat& c) const {
    if (c == 0) fail(errc::validation_error, "scaling lattice by zero");
    return from_rows(basis_.scaled(abs(rat_num(c))), den_ * rat_den(c));
  }

  // Coordinates of the rational row vector v in this basis, if they are
  // integral (i.e. v lies in the lattice). Unique when they exist.
  std::optional<std::vector<Int>> coordinates(const std::vector<Rat>& v) const {
    int n = dim();
    std::vector<Int> out(static_cast<size_t>(n));
    std::vector<Rat> rem(v);
    // row i is the only basis row with support starting at column i
    for (int i = 0; i < n; ++i) {
      Rat xi = rem[static_cast<size_t>(i)] * Rat(den_, basis_(i, i));
      if (rat_den(xi) != 1) return std::nullopt;
      out[static_cast<size_t>(i)] = rat_num(xi);
      if (xi != 0)
        for (int j = i; j < n; ++j)
          rem[static_cast<size_t>(j)] -= xi * Rat(basis_(i, j), den_);
    }
    return out;
  }

  bool contains(const std::vector<Rat>& v) const { return coordinates(v).has_value(); }

  bool contains(const HnfLattice& other) const {
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_row(i))) return false;
    return true;
  }

  // Integer matrix C with C * (this basis/den) == other basis/den; defined
  // exactly when other is a sublattice of this.
  std::optional<IntMat> inclusion_matrix(const HnfLattice& other) const {
    int n = dim();
    IntMat c(n, n);
    for (int i = 0; i < n; ++i) {
      auto coords = coordinates(other.basis_row(i));
      if (!coords) return std::nullopt;
      c.set_row(i, *coords);
    }
    return c;
  }

 private:
  void normalize() {
    Int g = gcd(basis_.content(), den_);
    if (g > 1) {
      for (int i = 0; i < basis_.rows(); ++i)
        for (int j = 0; j < basis_.cols(); ++j) basis_(i, j) /= g;
      den_ /= g;
    }
  }

  IntMat basis_;
  Int den_ = 1;
};

// Generalized index [A : B] as a positive rational; |det X| for the rational
// X carrying A's basis to B's. Integer exactly when B is contained in A.
inline Rat lattice_index(const HnfLattice& a, const HnfLattice& b) {
  if (a.dim() != b.dim()) fail(errc::dimension_mismatch, "lattice index dimension mismatch");
  unsigned n = static_cast<unsigned>(a.dim());
  return Rat(b.det_basis() * pow(a.den(), n), a.det_basis() * pow(b.den(), n));
}

inline HnfLattice lattice_sum(const HnfLattice& a, const HnfLattice& b) {
  if (a.dim() != b.dim()) fail(errc::dimension_mismatch, "lattice sum dimension mismatch");
  Int l = lcm(a.den(), b.den());
  IntMat stacked = a.basis().scaled(l / a.den()).stacked(b.basis().scaled(l / b.den()));
  return HnfLattice::from_rows(stacked, l);
}

inline HnfLattice lattice_intersect(const HnfLattice& a, const HnfLattice& b) {
  if (a.dim() != b.dim()) fail(errc::dimension_mismatch, "lattice intersect dimension mismatch");
  int n = a.dim();
  Int l = lcm(a.den(), b.den());
  IntMat x = a.basis().scaled(l / a.den());
  IntMat y = b.basis().scaled(l / b.den());
  // (u | v) with u*x == v*y <=> (u | v) in the left kernel of [x ; -y]
  IntMat ker = left_kernel(x.stacked(y.scaled(Int(-1))));
  IntMat rows(ker.rows(), n);
  for (int i = 0; i < ker.rows(); ++i)
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int k = 0; k < n; ++k) s += ker(i, k) * x(k, j);
      rows(i, j) = s;
    }
  return HnfLattice::from_rows(rows, l);
}

}  // namespace normring
