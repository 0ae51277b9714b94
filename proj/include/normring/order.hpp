#pragma once

// Orders: full-rank, unital, multiplication-closed Z-lattices in a number
// field, stored in power-basis coordinates.

#include <vector>

#include "normring/field.hpp"
#include "normring/lattice.hpp"

namespace normring {

class Order {
 public:
  Order() = default;
  Order(FieldPtr field, HnfLattice lattice) : field_(std::move(field)), lattice_(std::move(lattice)) {}

  const FieldPtr& field() const { return field_; }
  const HnfLattice& lattice() const { return lattice_; }
  int degree() const { return field_->degree(); }

  FieldElem basis_elem(int i) const {
    FieldElem e = field_->zero();
    for (int j = 0; j < degree(); ++j)
      e.c[static_cast<size_t>(j)] = Rat(lattice_.basis()(i, j), lattice_.den());
    return e;
  }

  bool contains(const FieldElem& x) const { return lattice_.contains(x.c); }

  bool operator==(const Order& o) const {
    return field_->poly() == o.field_->poly() && lattice_ == o.lattice_;
  }
  bool operator!=(const Order& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  HnfLattice lattice_;
};

// Validates the order axioms on an arbitrary full-rank lattice: contains 1,
// closed under multiplication.
inline Order order_from_lattice(const FieldPtr& k, const HnfLattice& lattice) {
  int n = k->degree();
  if (lattice.dim() != n) fail(errc::dimension_mismatch, "lattice dimension != field degree");
  std::vector<Rat> one(static_cast<size_t>(n));
  one[0] = 1;
  if (!lattice.contains(one)) fail(errc::not_unital, "lattice does not contain 1");
  const Int& den = lattice.den();
  Int den2 = den * den;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<Int> prod = k->mul_int_rows(lattice.basis().row(i), lattice.basis().row(j));
      std::vector<Rat> v(static_cast<size_t>(n));
      for (int t = 0; t < n; ++t) v[static_cast<size_t>(t)] = Rat(prod[static_cast<size_t>(t)], den2);
      if (!lattice.contains(v)) {
        std::string w;
        for (int t = 0; t < n; ++t) w += (t ? "," : "") + Rat(prod[static_cast<size_t>(t)], den2).str();
        fail(errc::not_closed, "basis product (" + w + ") escapes the lattice");
      }
    }
  return Order(k, lattice);
}

inline Order order_create(const FieldPtr& k, const std::vector<FieldElem>& basis) {
  int n = k->degree();
  if (static_cast<int>(basis.size()) < n)
    fail(errc::rank_deficient, "need at least " + std::to_string(n) + " elements");
  Int den = 1;
  for (const FieldElem& e : basis) den = lcm(den, elem_den(e));
  IntMat rows(static_cast<int>(basis.size()), n);
  for (size_t i = 0; i < basis.size(); ++i) rows.set_row(static_cast<int>(i), elem_num_row(basis[i], den));
  return order_from_lattice(k, HnfLattice::from_rows(rows, den));
}

inline Order equation_order(const FieldPtr& k) {
  return Order(k, HnfLattice::standard(k->degree()));
}

// Z + c*Z[alpha]: basis 1, c*alpha, ..., c*alpha^{n-1}
inline Order suborder_index(const FieldPtr& k, const Int& c) {
  if (c < 1) fail(errc::validation_error, "suborder index must be positive");
  int n = k->degree();
  IntMat rows(n, n);
  rows(0, 0) = 1;
  for (int i = 1; i < n; ++i) rows(i, i) = c;
  return Order(k, HnfLattice::from_rows(rows, Int(1)));
}

// Determinant of the trace form on the basis of R; an exact integer.
inline Int order_disc(const Order& r) {
  int n = r.degree();
  const NumberField& k = *r.field();
  const IntMat& b = r.lattice().basis();
  IntMat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Int tr = k.trace_int(k.mul_int_rows(b.row(i), b.row(j)));
      t(i, j) = tr;
      t(j, i) = tr;
    }
  Int num = t.det();
  Int den = pow(r.lattice().den(), static_cast<unsigned>(2 * n));
  if (num % den != 0) fail(errc::validation_error, "non-integral discriminant; basis not an order");
  return num / den;
}

}  // namespace normring
