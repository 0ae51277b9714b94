#pragma once

// Maximal-order computation: p-radical, p-maximalization (multiplier ring of
// the radical, iterated to a fixed point), and normalization driven by the
// square part of the discriminant.

#include <vector>

#include "normring/local.hpp"

namespace normring {

// Factorization of an order discriminant: certified primes only. Trial
// division bound is the documented desk-scale limit; an uncertified cofactor
// is an explicit error in normalize(), never a silent assumption.
struct DiscFactorization {
  Int disc;
  std::vector<std::pair<Int, int>> factors;
  Int cofactor;  // +-1 when complete
  bool complete() const { return cofactor == 1 || cofactor == -1; }
};

inline DiscFactorization factor_disc(const Int& disc, const Int& trial_bound = Int(1000000)) {
  Factorization f = factor_integer(disc, trial_bound);
  return DiscFactorization{f.value, f.factors, f.cofactor};
}

// The ideal I_p with I_p/pR = radical of R/pR.
inline FracIdeal p_radical(const Order& r, const Int& p) {
  if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
  FpAlgebra a = FpAlgebra::quotient(r.field(), r.lattice(), r.lattice().scaled(Rat(p, 1)), p);
  IntMat rad = a.radical_rows();
  IntMat rows = r.lattice().basis().scaled(p);
  if (rad.rows() > 0) rows = rows.stacked(rad * r.lattice().basis());
  return ideal_from_lattice(r, HnfLattice::from_rows(rows, r.lattice().den()));
}

// One Pohst-Zassenhaus round-2 chain: R <- (I_p : I_p) until stable.
inline Order p_maximal_order(const Order& r_in, const Int& p) {
  if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
  Order r = r_in;
  while (true) {
    FracIdeal rad = p_radical(r, p);
    Order next = multiplier_ring(rad);
    if (next.lattice() == r.lattice()) return r;
    r = next;
  }
}

// Normalization of R. Requires the square part of disc(R) to be certified.
inline Order normalize(const Order& r_in) {
  DiscFactorization fact = factor_disc(order_disc(r_in));
  if (!fact.complete())
    fail(errc::factorization_incomplete,
         "discriminant cofactor " + fact.cofactor.str() + " is not certified prime");
  Order r = r_in;
  for (const auto& [p, e] : fact.factors)
    if (e >= 2) r = p_maximal_order(r, p);
#ifndef NDEBUG
  for (const auto& [p, e] : fact.factors)
    if (e >= 2 && !(p_maximal_order(r, p).lattice() == r.lattice()))
      fail(errc::validation_error, "normalize is not a fixed point at p = " + p.str());
#endif
  return r;
}

}  // namespace normring
