#include "catch_amalgamated.hpp"

#include "normring/local.hpp"
#include "normring/normalize.hpp"
#include "normring/reproduce.hpp"

using namespace normring;

namespace {

FieldElem random_elem(const FieldPtr& k, SplitMix64& rng, int bound) {
  FieldElem e = k->zero();
  for (int i = 0; i < k->degree(); ++i)
    e.c[static_cast<size_t>(i)] = Rat(Int(rng.range(-bound, bound)), 1);
  return e;
}

FracIdeal random_integral_ideal(const Order& r, SplitMix64& rng, int bound) {
  while (true) {
    std::vector<FieldElem> gens;
    int count = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < count; ++i) gens.push_back(random_elem(r.field(), rng, bound));
    bool all_zero = true;
    for (const FieldElem& g : gens) all_zero = all_zero && g.is_zero();
    if (all_zero) continue;
    FracIdeal i = ideal_generate(r, gens);
    Int s = ideal_integral_scale(i);
    return s == 1 ? i : ideal_scaled(i, Rat(s, 1));
  }
}

HnfLattice diag2(Int a, Int b) {
  IntMat m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return HnfLattice::from_rows(m, Int(1));
}

}  // namespace

TEST_CASE("primes above 2 in Z[2i]") {
  Order r = order_z2i();
  auto ms = primes_above(r, Int(2));
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].res_deg == 1);
  REQUIRE(ms[0].ideal.lattice == diag2(Int(2), Int(2)));
}

TEST_CASE("primes above 5 in Z[i] split") {
  FieldPtr k = gaussian_field();
  Order zi = equation_order(k);
  auto ms = primes_above(zi, Int(5));
  REQUIRE(ms.size() == 2);
  for (const auto& m : ms) {
    REQUIRE(m.res_deg == 1);
    REQUIRE(ideal_norm(m.ideal) == Rat(5, 1));
  }
  REQUIRE(ms[0].ideal.lattice != ms[1].ideal.lattice);
  // complementary: product is 5*Z[i]
  REQUIRE(ideal_product(ms[0].ideal, ms[1].ideal).lattice ==
          HnfLattice::from_rows(IntMat::identity(2).scaled(Int(5)), Int(1)));
}

TEST_CASE("primes above 2 in the split cubic maximal order") {
  FieldPtr k = split_cubic_field();
  Order o3 = normalize(equation_order(k));
  auto ms = primes_above(o3, Int(2));
  REQUIRE(ms.size() == 3);
  for (const auto& m : ms) REQUIRE(m.res_deg == 1);
}

TEST_CASE("primes_above rejects composites") {
  REQUIRE_THROWS_AS(primes_above(order_z2i(), Int(6)), Error);
}

TEST_CASE("local norms by saturation") {
  Order r = order_z2i();
  FieldPtr k = r.field();
  auto m = primes_above(r, Int(2)).front();
  FracIdeal i2 = ideal_generate(r, {elem_scale(k->one(), Rat(4, 1)),
                                    elem_scale(k->alpha_power(1), Rat(4, 1))});
  REQUIRE(local_norm(i2, m) == 8);
  REQUIRE(local_norm(unit_ideal(r), m) == 1);

  Order zi = equation_order(k);
  auto m2 = primes_above(zi, Int(2)).front();
  FracIdeal ten = ideal_generate(zi, {elem_scale(k->one(), Rat(10, 1))});
  REQUIRE(local_norm(ten, m2) == 4);

  FracIdeal half{zi, zi.lattice().scaled(Rat(1, 2))};
  REQUIRE_THROWS_AS(local_norm(half, m2), Error);  // not integral
}

TEST_CASE("local data bundles index and length") {
  Order r = order_z2i();
  FieldPtr k = r.field();
  auto m = primes_above(r, Int(2)).front();
  FracIdeal i2 = ideal_generate(r, {elem_scale(k->one(), Rat(4, 1)),
                                    elem_scale(k->alpha_power(1), Rat(4, 1))});
  LocalData d = local_data(i2, m);
  REQUIRE(d.local_index == 8);
  REQUIRE(d.length == 3);
  REQUIRE(pow(d.m.residue_size(), static_cast<unsigned>(d.length)) == d.local_index);

  Order zi = equation_order(k);
  auto m5 = primes_above(zi, Int(5)).front();
  FracIdeal five = ideal_generate(zi, {elem_scale(k->one(), Rat(5, 1))});
  LocalData d5 = local_data(five, m5);
  REQUIRE(d5.local_index == 5);
  REQUIRE(d5.length == 1);
}

TEST_CASE("minimal generator counts at a maximal ideal") {
  Order r = order_z2i();
  FieldPtr k = r.field();
  auto m = primes_above(r, Int(2)).front();
  FracIdeal i = ideal_generate(r, {elem_scale(k->one(), Rat(2, 1)),
                                   elem_scale(k->alpha_power(1), Rat(2, 1))});
  REQUIRE(min_generators_at(i, m) == 2);
  REQUIRE(min_generators_at(ideal_generate(r, {k->alpha_power(1)}), m) == 1);

  FieldPtr k4 = quartic_field();
  Order r2 = suborder_index(k4, Int(2));
  auto m4 = primes_above(r2, Int(2)).front();
  REQUIRE(min_generators_at(m4.ideal, m4) == 4);
}

TEST_CASE("conductor lattices") {
  Order r = order_z2i();
  Order zi = equation_order(r.field());
  REQUIRE(conductor(r, zi).lattice == diag2(Int(2), Int(2)));
  REQUIRE(conductor(r, r).lattice == r.lattice());

  FieldPtr k4 = quartic_field();
  Order r2 = suborder_index(k4, Int(2));
  Order zal = equation_order(k4);
  REQUIRE(conductor(r2, zal).lattice ==
          HnfLattice::from_rows(IntMat::identity(4).scaled(Int(2)), Int(1)));

  REQUIRE_THROWS_AS(conductor(zal, r2), Error);  // containment goes the other way
}

TEST_CASE("g_local at singular and regular primes") {
  Order r = order_z2i();
  Order zi = equation_order(r.field());
  auto m2 = primes_above(r, Int(2)).front();
  REQUIRE(g_local(r, m2, zi) == 2);
  auto m3 = primes_above(r, Int(3)).front();
  REQUIRE(g_local(r, m3, zi) == 1);  // coprime to the conductor

  FieldPtr k4 = quartic_field();
  Order r2 = suborder_index(k4, Int(2));
  Order zal = equation_order(k4);
  auto m = primes_above(r2, Int(2)).front();
  REQUIRE(g_local(r2, m, zal) == 4);
}

TEST_CASE("g_local validates the claimed normalization") {
  Order r = order_z2i();
  auto m = primes_above(r, Int(2)).front();
  REQUIRE_THROWS_WITH(g_local(r, m, r),  // Z[2i] is not its own normalization
                      Catch::Matchers::ContainsSubstring("NotNormalization"));
}

TEST_CASE("g_global across the worked orders") {
  Order r = order_z2i();
  Order zi = equation_order(r.field());
  GlobalG g = g_global(r, zi);
  REQUIRE(g.max_local == 2);
  REQUIRE(g.exact);
  REQUIRE(g.per_prime.size() == 1);

  GlobalG gmax = g_global(zi, zi);
  REQUIRE(gmax.max_local == 1);
  REQUIRE_FALSE(gmax.exact);  // only the bound g <= 2 is known

  FieldPtr k4 = quartic_field();
  GlobalG g4 = g_global(suborder_index(k4, Int(2)), equation_order(k4));
  REQUIRE(g4.max_local == 4);
  REQUIRE(g4.exact);
}

TEST_CASE("extension generator search") {
  Order r = order_z2i();
  FieldPtr k = r.field();
  Order zi = equation_order(k);
  FracIdeal i = ideal_generate(r, {elem_scale(k->one(), Rat(2, 1)),
                                   elem_scale(k->alpha_power(1), Rat(2, 1))});
  auto gen = find_extension_generator(i, zi, Int(2));
  REQUIRE(gen.has_value());
  REQUIRE(*gen == elem_scale(k->one(), Rat(2, 1)));  // the witness 2, first in digit order

  FracIdeal pr = ideal_generate(r, {elem_scale(k->alpha_power(1), Rat(6, 1))});
  auto gen2 = find_extension_generator(pr, zi, Int(2));
  REQUIRE(gen2.has_value());
  REQUIRE(lattice_times_elem(k, zi.lattice(), *gen2) ==
          module_product(k, pr.lattice, zi.lattice()));

  // the split-cubic ideal whose extension has no generator inside it
  FieldPtr k3 = split_cubic_field();
  Order o3 = normalize(equation_order(k3));
  Order r3 = shell_order(o3, Int(2));
  FracIdeal j3 = lenstra_split_ideal(r3, o3);
  REQUIRE(module_product(k3, j3.lattice, o3.lattice()) == o3.lattice());
  REQUIRE_FALSE(find_extension_generator(j3, o3, Int(2)).has_value());
}

TEST_CASE("local-global product of norms") {
  SplitMix64 rng(31);
  std::vector<Order> orders{order_z2i(), suborder_index(quartic_field(), Int(2)),
                            shell_order(normalize(equation_order(split_cubic_field())), Int(2)),
                            order_r4()};
  for (const Order& r : orders) {
    for (int t = 0; t < 8; ++t) {
      FracIdeal i = random_integral_ideal(r, rng, 5);
      Rat norm = ideal_norm(i);
      REQUIRE(rat_den(norm) == 1);
      Factorization fact = factor_integer(rat_num(norm));
      REQUIRE(fact.complete());
      Int prod = 1;
      for (const auto& [p, e] : fact.factors) {
        (void)e;
        for (const MaximalIdeal& m : primes_above(r, p)) prod *= local_norm(i, m);
      }
      REQUIRE(prod == rat_num(norm));
    }
  }
}

TEST_CASE("generator bound: min_generators_at <= g_local at singular primes") {
  SplitMix64 rng(32);
  std::vector<std::pair<Order, Order>> pairs;
  {
    Order r = order_z2i();
    pairs.emplace_back(r, equation_order(r.field()));
    FieldPtr k4 = quartic_field();
    pairs.emplace_back(suborder_index(k4, Int(2)), equation_order(k4));
    Order o3 = normalize(equation_order(split_cubic_field()));
    pairs.emplace_back(shell_order(o3, Int(2)), o3);
  }
  for (const auto& [r, rt] : pairs) {
    GlobalG g = g_global(r, rt);
    for (int t = 0; t < 10; ++t) {
      FracIdeal i = random_integral_ideal(r, rng, 5);
      for (const auto& [m, gl] : g.per_prime) REQUIRE(min_generators_at(i, m) <= gl);
    }
  }
}

TEST_CASE("saturation sequence is monotone and stabilizes") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  auto m = primes_above(r2, Int(2)).front();
  FieldPtr k = r2.field();
  FracIdeal i = ideal_generate(r2, {elem_scale(k->one(), Rat(4, 1)),
                                    elem_scale(k->alpha_power(2), Rat(2, 1))});
  HnfLattice mpow = m.ideal.lattice;
  Rat last(0);
  for (int e = 1; e <= 6; ++e) {
    HnfLattice s = lattice_sum(i.lattice, mpow);
    Rat idx = lattice_index(r2.lattice(), s);
    REQUIRE(idx >= last);
    last = idx;
    mpow = module_product(k, mpow, m.ideal.lattice);
  }
  REQUIRE(Rat(local_norm(i, m), 1) == last);  // stabilized by e = 6 here
}

TEST_CASE("primes_above is complete: local norms of pR multiply to p^n") {
  std::vector<Order> orders{order_z2i(), equation_order(gaussian_field()),
                            suborder_index(quartic_field(), Int(2)),
                            normalize(equation_order(split_cubic_field()))};
  for (const Order& r : orders) {
    for (const Int& p : {Int(2), Int(3), Int(5), Int(7)}) {
      FracIdeal pr{r, r.lattice().scaled(Rat(p, 1))};
      Int prod = 1;
      for (const MaximalIdeal& m : primes_above(r, p)) prod *= local_norm(pr, m);
      REQUIRE(prod == pow(p, static_cast<unsigned>(r.degree())));
    }
  }
}

TEST_CASE("quadratic splitting matches the Kronecker symbol") {
  // independent oracle: for the maximal order of Q(sqrt(d)) and odd p not
  // dividing disc, p splits iff disc is a square mod p, and ramifies iff
  // p | disc
  std::vector<long long> ds{-1, -2, -3, -5, 2, 3, 5, 13, -7, -11};
  for (long long d : ds) {
    auto k = NumberField::create({Int(-d), Int(0), Int(1)});
    Order ok = normalize(equation_order(k));
    Int disc = order_disc(ok);
    for (const Int& p : {Int(3), Int(5), Int(7), Int(11), Int(13)}) {
      auto ms = primes_above(ok, p);
      if (disc % p == 0) {
        REQUIRE(ms.size() == 1);
        REQUIRE(ms[0].res_deg == 1);  // ramified
        continue;
      }
      int chi = jacobi_symbol(disc, p);
      if (chi == 1) {
        REQUIRE(ms.size() == 2);
      } else {
        REQUIRE(ms.size() == 1);
        REQUIRE(ms[0].res_deg == 2);  // inert
      }
    }
  }
}

TEST_CASE("quadratic normalizations have cyclic quotient") {
  SplitMix64 rng(33);
  std::vector<long long> ds{-1, -2, -3, 5, 2, 3, -7, 13, -11, 10};
  for (long long d : ds) {
    auto k = NumberField::create({Int(-d), Int(0), Int(1)});
    Int c(2 + static_cast<long long>(rng.below(8)));
    Order r = suborder_index(k, c);
    Order rt = normalize(r);
    auto inc = rt.lattice().inclusion_matrix(r.lattice());
    REQUIRE(inc.has_value());
    std::vector<Int> factors = snf(*inc);
    int nontrivial = 0;
    for (const Int& f : factors) nontrivial += f > 1 ? 1 : 0;
    REQUIRE(nontrivial <= 1);  // Rt/R is cyclic for quadratic orders
  }
}
