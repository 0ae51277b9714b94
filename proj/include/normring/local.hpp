#pragma once

// Local data at maximal ideals: primes above p, local norms by saturation,
// Nakayama generator counts, the conductor, and the g invariant. No
// localization is ever materialized; every local quantity is a stabilized
// global index.

#include <map>
#include <optional>
#include <vector>

#include "normring/fp_algebra.hpp"

namespace normring {

struct MaximalIdeal {
  FracIdeal ideal;
  Int p;        // residue characteristic
  int res_deg;  // #(R/m) == p^res_deg

  Int residue_size() const { return pow(p, static_cast<unsigned>(res_deg)); }
};

// All maximal ideals of R containing p, with residue degrees; complete by
// construction (idempotent decomposition of R/pR).
inline std::vector<MaximalIdeal> primes_above(const Order& r, const Int& p) {
  if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
  const FieldPtr& k = r.field();
  FpAlgebra a = FpAlgebra::quotient(k, r.lattice(), r.lattice().scaled(Rat(p, 1)), p);
  ResidueSplit split = split_residue(a);

  std::vector<MaximalIdeal> out;
  for (const FieldComponent& f : split.fields) {
    // kernel of B ->> F: spanned by b*(1_B - e); pull back to A, add radical
    std::vector<Int> co(static_cast<size_t>(split.b_dim));
    for (int t = 0; t < split.b_dim; ++t)
      co[static_cast<size_t>(t)] =
          mod_reduce(split.b_unit[static_cast<size_t>(t)] - f.idempotent[static_cast<size_t>(t)], p);
    IntMat kernel_b(split.b_dim, split.b_dim);
    for (int i = 0; i < split.b_dim; ++i) {
      std::vector<Int> bi(static_cast<size_t>(split.b_dim), Int(0));
      bi[static_cast<size_t>(i)] = 1;
      kernel_b.set_row(i, split.mul_b(a, bi, co));
    }
    kernel_b = rref_mod_p(kernel_b, p);
    // A-coordinate rows: radical + kernel_b * embed
    IntMat in_a = split.radical.stacked(kernel_b * split.embed);
    // lattice rows: p*R plus lifts of the kernel vectors through R's basis
    IntMat rows = r.lattice().basis().scaled(p);
    if (in_a.rows() > 0) rows = rows.stacked(in_a * r.lattice().basis());
    HnfLattice m = HnfLattice::from_rows(rows, r.lattice().den());
    FracIdeal ideal = ideal_from_lattice(r, m);
    Rat norm = ideal_norm(ideal);
    if (rat_den(norm) != 1 || norm != Rat(pow(p, static_cast<unsigned>(f.deg)), 1))
      fail(errc::validation_error, "maximal ideal norm mismatch");
    out.push_back(MaximalIdeal{ideal, p, f.deg});
  }
  std::sort(out.begin(), out.end(), [](const MaximalIdeal& x, const MaximalIdeal& y) {
    return x.ideal.lattice < y.ideal.lattice;
  });
  return out;
}

// [R_m : I_m] for integral I, computed as the stabilized index [R : I + m^e].
inline Int local_norm(const FracIdeal& i, const MaximalIdeal& m) {
  const Order& r = i.order;
  if (!r.lattice().contains(i.lattice)) fail(errc::not_integral, "ideal is not contained in R");
  const FieldPtr& k = r.field();
  HnfLattice mpow = m.ideal.lattice;
  HnfLattice cur = lattice_sum(i.lattice, mpow);
  while (true) {
    mpow = module_product(k, mpow, m.ideal.lattice);
    HnfLattice next = lattice_sum(i.lattice, mpow);
    if (next == cur) break;
    cur = next;
  }
#ifndef NDEBUG
  // stabilization is permanent: two extra steps stay put
  {
    HnfLattice mp = mpow;
    for (int extra = 0; extra < 2; ++extra) {
      mp = module_product(k, mp, m.ideal.lattice);
      if (lattice_sum(i.lattice, mp) != cur)
        fail(errc::validation_error, "saturation did not stabilize");
    }
  }
#endif
  Rat idx = lattice_index(r.lattice(), cur);
  if (rat_den(idx) != 1) fail(errc::validation_error, "non-integral local norm");
  return rat_num(idx);
}

// Local invariants of an integral ideal at m: the local index [R_m : I_m]
// and its length over the residue field, #(R/m)^length == local_index.
struct LocalData {
  MaximalIdeal m;
  Int local_index;
  int length = 0;
};

inline LocalData local_data(const FracIdeal& i, const MaximalIdeal& m) {
  LocalData out;
  out.m = m;
  out.local_index = local_norm(i, m);
  auto l = exact_log(m.residue_size(), out.local_index);
  if (!l) fail(errc::validation_error, "local index is not a power of #(R/m)");
  out.length = *l;
  return out;
}

// dim over R/m of I/mI; by Nakayama the minimal generator count of I at m.
inline int min_generators_at(const FracIdeal& i, const MaximalIdeal& m) {
  HnfLattice mi = module_product(i.order.field(), m.ideal.lattice, i.lattice);
  Rat idx = lattice_index(i.lattice, mi);
  if (rat_den(idx) != 1) fail(errc::validation_error, "mI not inside I");
  auto e = exact_log(m.residue_size(), rat_num(idx));
  if (!e) fail(errc::validation_error, "[I : mI] is not a power of #(R/m)");
  return *e;
}

// Largest Rt-ideal contained in R; an ideal of both rings.
inline FracIdeal conductor(const Order& r, const Order& rt) {
  if (!(r.field()->poly() == rt.field()->poly()))
    fail(errc::order_mismatch, "orders live in different fields");
  if (!rt.lattice().contains(r.lattice()))
    fail(errc::not_contained, "R is not contained in Rt");
  HnfLattice c = colon_lattice(r.field(), r.lattice(), rt.lattice());
  return ideal_from_lattice(r, c);
}

namespace detail {

// g of the localization at m, with no revalidation of Rt.
inline int g_local_unchecked(const Order& r, const MaximalIdeal& m, const Order& rt) {
  HnfLattice mrt = module_product(r.field(), m.ideal.lattice, rt.lattice());
  Rat idx = lattice_index(rt.lattice(), mrt);
  if (rat_den(idx) != 1) fail(errc::validation_error, "m*Rt not inside Rt");
  auto e = exact_log(m.residue_size(), rat_num(idx));
  if (!e) fail(errc::validation_error, "[Rt : mRt] is not a power of #(R/m)");
  return *e;
}

}  // namespace detail

// Containment + index + discriminant relation + Dedekind sampling; throws
// NotNormalization when Rt cannot be the normalization of R.
inline void validate_normalization(const Order& r, const Order& rt, long p_bound = 50) {
  if (!(r.field()->poly() == rt.field()->poly()))
    fail(errc::not_normalization, "normalization lives in a different field");
  if (!rt.lattice().contains(r.lattice()))
    fail(errc::not_normalization, "normalization does not contain the order");
  Rat idx = lattice_index(rt.lattice(), r.lattice());
  if (rat_den(idx) != 1) fail(errc::not_normalization, "index [Rt : R] is not integral");
  Int index = rat_num(idx);
  if (order_disc(r) != order_disc(rt) * index * index)
    fail(errc::not_normalization, "discriminant does not match disc(Rt) * index^2");
  std::vector<Int> ps = primes_up_to(p_bound);
  Factorization fact = factor_integer(index);
  for (const auto& [q, e] : fact.factors) {
    (void)e;
    bool seen = false;
    for (const Int& p : ps) seen = seen || p == q;
    if (!seen) ps.push_back(q);
  }
  if (!fact.complete())
    fail(errc::not_normalization, "cannot factor the index [Rt : R] for Dedekind sampling");
  for (const Int& p : ps)
    for (const MaximalIdeal& m : primes_above(rt, p)) {
      FracIdeal m2 = ideal_product(m.ideal, m.ideal);
      if (ideal_norm(m2) != Rat(m.residue_size() * m.residue_size(), 1))
        fail(errc::not_normalization,
             "Dedekind sampling failed: N(m^2) != N(m)^2 above p = " + p.str());
    }
}

// dim over R/m of Rt/mRt; by the local theory this equals g(R_m).
inline int g_local(const Order& r, const MaximalIdeal& m, const Order& rt) {
  validate_normalization(r, rt);
  return detail::g_local_unchecked(r, m, rt);
}

struct GlobalG {
  std::vector<std::pair<MaximalIdeal, int>> per_prime;  // singular m -> g_local
  int max_local = 1;
  bool exact = false;  // true iff max_local >= 2; otherwise only g(R) <= 2 is known
};

inline GlobalG g_global(const Order& r, const Order& rt) {
  validate_normalization(r, rt);
  GlobalG out;
  FracIdeal cond = conductor(r, rt);
  Rat n_cond = ideal_norm(cond);
  if (rat_den(n_cond) != 1) fail(errc::validation_error, "conductor is not integral");
  Factorization fact = factor_integer(rat_num(n_cond));
  if (!fact.complete())
    fail(errc::factorization_incomplete,
         "conductor norm has uncertified cofactor " + fact.cofactor.str());
  for (const auto& [p, e] : fact.factors) {
    (void)e;
    for (const MaximalIdeal& m : primes_above(r, p)) {
      if (!m.ideal.lattice.contains(cond.lattice)) continue;  // only m dividing the conductor
      int g = detail::g_local_unchecked(r, m, rt);
      out.per_prime.emplace_back(m, g);
      out.max_local = std::max(out.max_local, g);
    }
  }
  out.exact = out.max_local >= 2;
  return out;
}

// Search for x in I with ord_q(x) == ord_q(I*Rt) at every prime q of Rt above
// p, over representatives of I modulo p*(I*Rt). Returns the first witness in
// the fixed digit order, or nothing if the exhaustive class search fails.
inline std::optional<FieldElem> find_extension_generator(const FracIdeal& i, const Order& rt,
                                                         const Int& p) {
  if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
  const FieldPtr& k = i.order.field();
  int n = i.order.degree();
  HnfLattice irt = module_product(k, i.lattice, rt.lattice());
  HnfLattice pirt = irt.scaled(Rat(p, 1));
  HnfLattice s = lattice_intersect(i.lattice, pirt);
  auto inc = i.lattice.inclusion_matrix(s);
  if (!inc) fail(errc::validation_error, "intersection escaped the ideal");
  IntMat h = hnf(*inc);
  // odometer over the box of coset representatives, first digit fastest
  std::vector<Int> z(static_cast<size_t>(n), Int(0));
  auto advance = [&]() {
    for (int t = 0; t < n; ++t) {
      z[static_cast<size_t>(t)] += 1;
      if (z[static_cast<size_t>(t)] < h(t, t)) return true;
      z[static_cast<size_t>(t)] = 0;
    }
    return false;
  };
  while (advance()) {
    FieldElem x = k->zero();
    for (int t = 0; t < n; ++t) {
      if (z[static_cast<size_t>(t)] == 0) continue;
      for (int j = 0; j < n; ++j)
        x.c[static_cast<size_t>(j)] +=
            Rat(z[static_cast<size_t>(t)] * i.lattice.basis()(t, j), i.lattice.den());
    }
    if (x.is_zero()) continue;
    HnfLattice xrt = lattice_times_elem(k, rt.lattice(), x);
    Rat idx = lattice_index(irt, xrt);
    if (rat_den(idx) != 1) fail(errc::validation_error, "x*Rt escapes I*Rt");
    if (rat_num(idx) % p != 0) return x;
  }
  return std::nullopt;
}

}  // namespace normring
