#pragma once

// Fractional ideals over a fixed order: generation, products, generalized
// norms, colon ideals, multiplier rings, invertibility. An ideal is its
// canonical module lattice; generator lists are not retained.

#include <vector>

#include "normring/order.hpp"

namespace normring {

struct FracIdeal {
  Order order;
  HnfLattice lattice;

  bool operator==(const FracIdeal& o) const {
    return order == o.order && lattice == o.lattice;
  }
  bool operator!=(const FracIdeal& o) const { return !(*this == o); }
};

// Lattice spanned by all pairwise products of basis rows; the module product
// A*B in power-basis coordinates.
inline HnfLattice module_product(const FieldPtr& k, const HnfLattice& a, const HnfLattice& b) {
  int n = k->degree();
  IntMat rows(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rows.set_row(i * n + j, k->mul_int_rows(a.basis().row(i), b.basis().row(j)));
  return HnfLattice::from_rows(rows, a.den() * b.den());
}

// x * A for a nonzero field element x.
inline HnfLattice lattice_times_elem(const FieldPtr& k, const HnfLattice& a, const FieldElem& x) {
  if (x.is_zero()) fail(errc::validation_error, "scaling lattice by zero element");
  int n = k->degree();
  Int dx = elem_den(x);
  std::vector<Int> xi = elem_num_row(x, dx);
  IntMat rows(n, n);
  for (int i = 0; i < n; ++i) rows.set_row(i, k->mul_int_rows(a.basis().row(i), xi));
  return HnfLattice::from_rows(rows, a.den() * dx);
}

// {x in K : x*B <= A}, computed by intersecting the preimages A * v^{-1}
// over the basis vectors v of B.
inline HnfLattice colon_lattice(const FieldPtr& k, const HnfLattice& a, const HnfLattice& b) {
  int n = k->degree();
  HnfLattice result;
  bool first = true;
  for (int j = 0; j < n; ++j) {
    FieldElem v = k->zero();
    for (int t = 0; t < n; ++t) v.c[static_cast<size_t>(t)] = Rat(b.basis()(j, t), b.den());
    HnfLattice pre = lattice_times_elem(k, a, k->inv(v));
    result = first ? pre : lattice_intersect(result, pre);
    first = false;
  }
  return result;
}

inline FracIdeal ideal_from_lattice(const Order& r, const HnfLattice& lattice, bool validate = true) {
  if (lattice.dim() != r.degree()) fail(errc::dimension_mismatch, "ideal lattice dimension");
  if (validate) {
    const FieldPtr& k = r.field();
    for (int i = 0; i < r.degree(); ++i)
      for (int j = 0; j < r.degree(); ++j) {
        std::vector<Int> prod =
            k->mul_int_rows(r.lattice().basis().row(i), lattice.basis().row(j));
        Int d = r.lattice().den() * lattice.den();
        std::vector<Rat> v(static_cast<size_t>(r.degree()));
        for (int t = 0; t < r.degree(); ++t) v[static_cast<size_t>(t)] = Rat(prod[static_cast<size_t>(t)], d);
        if (!lattice.contains(v))
          fail(errc::validation_error, "lattice is not a module over the order");
      }
  }
  return FracIdeal{r, lattice};
}

inline FracIdeal ideal_generate(const Order& r, const std::vector<FieldElem>& gens) {
  int n = r.degree();
  std::vector<FieldElem> nonzero;
  for (const FieldElem& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) fail(errc::zero_ideal, "all generators are zero");
  Int den = r.lattice().den();
  for (const FieldElem& g : nonzero) den = lcm(den, elem_den(g) * r.lattice().den());
  IntMat rows(static_cast<int>(nonzero.size()) * n, n);
  int row = 0;
  for (const FieldElem& g : nonzero) {
    Int dg = elem_den(g);
    std::vector<Int> gnum = elem_num_row(g, dg);
    Int scale = den / (dg * r.lattice().den());
    for (int i = 0; i < n; ++i) {
      std::vector<Int> prod = r.field()->mul_int_rows(gnum, r.lattice().basis().row(i));
      for (Int& v : prod) v *= scale;
      rows.set_row(row++, prod);
    }
  }
  // module-closed by construction
  return FracIdeal{r, HnfLattice::from_rows(rows, den)};
}

inline FracIdeal unit_ideal(const Order& r) { return FracIdeal{r, r.lattice()}; }

inline void require_same_order(const FracIdeal& a, const FracIdeal& b) {
  if (!(a.order == b.order)) fail(errc::order_mismatch, "ideals belong to different orders");
}

inline FracIdeal ideal_product(const FracIdeal& a, const FracIdeal& b) {
  require_same_order(a, b);
  return FracIdeal{a.order, module_product(a.order.field(), a.lattice, b.lattice)};
}

// Generalized index [R : I]; a positive rational, integer exactly when I <= R.
inline Rat ideal_norm(const FracIdeal& i) { return lattice_index(i.order.lattice(), i.lattice); }

inline FracIdeal ideal_scaled(const FracIdeal& i, const Rat& c) {
  return FracIdeal{i.order, i.lattice.scaled(c)};
}

// Smallest positive integer s with s*I integral (inside R).
inline Int ideal_integral_scale(const FracIdeal& i) {
  Int s = 1;
  const HnfLattice& rl = i.order.lattice();
  for (int row = 0; row < i.lattice.dim(); ++row) {
    std::vector<Rat> v = i.lattice.basis_row(row);
    // denominator of the coordinates of v against R's basis
    // solve by triangular back-substitution, tracking denominators
    FieldElem e{v};
    for (int t = 0; t < rl.dim(); ++t) {
      Rat xi = e.c[static_cast<size_t>(t)] * Rat(rl.den(), rl.basis()(t, t));
      s = lcm(s, rat_den(xi));
      if (xi != 0)
        for (int j = t; j < rl.dim(); ++j)
          e.c[static_cast<size_t>(j)] -= xi * Rat(rl.basis()(t, j), rl.den());
    }
  }
  return s;
}

inline FracIdeal colon_ideal(const FracIdeal& a, const FracIdeal& b) {
  require_same_order(a, b);
  return FracIdeal{a.order, colon_lattice(a.order.field(), a.lattice, b.lattice)};
}

// Multiplier ring (I : I), re-validated as an order containing R. A failure
// of the validation is a library defect, not an input error.
inline Order multiplier_ring(const FracIdeal& i) {
  HnfLattice m = colon_lattice(i.order.field(), i.lattice, i.lattice);
  Order out = order_from_lattice(i.order.field(), m);
  if (!m.contains(i.order.lattice()))
    fail(errc::validation_error, "multiplier ring does not contain the base order");
  return out;
}

inline bool is_invertible(const FracIdeal& i) {
  HnfLattice inv = colon_lattice(i.order.field(), i.order.lattice(), i.lattice);
  return module_product(i.order.field(), i.lattice, inv) == i.order.lattice();
}

}  // namespace normring
