#include "catch_amalgamated.hpp"

#include "normring/normalize.hpp"
#include "normring/reproduce.hpp"

using namespace normring;

TEST_CASE("p-radicals") {
  Order r = order_z2i();
  FracIdeal i2 = p_radical(r, Int(2));
  REQUIRE(i2.lattice == HnfLattice::from_rows(IntMat(2, 2, {Int(2), Int(0), Int(0), Int(2)}), Int(1)));

  Order zi = equation_order(gaussian_field());
  REQUIRE(p_radical(zi, Int(3)).lattice == zi.lattice().scaled(Rat(3, 1)));  // 3 inert

  // split cubic equation order at 2: the radical of F_2[x]/(x^2(x+1)) is
  // spanned by x^2+x, so the radical ideal has index 4 in Z[alpha]
  Order zal = equation_order(split_cubic_field());
  FracIdeal rad2 = p_radical(zal, Int(2));
  REQUIRE(ideal_norm(rad2) == Rat(4, 1));
  FieldElem w = elem_add(zal.field()->alpha_power(2), zal.field()->alpha_power(1));
  REQUIRE(rad2.lattice.contains(w.c));

  REQUIRE_THROWS_AS(p_radical(r, Int(4)), Error);
}

TEST_CASE("p-maximal orders") {
  Order r = order_z2i();
  Order zi = equation_order(r.field());
  REQUIRE(p_maximal_order(r, Int(2)) == zi);
  REQUIRE(p_maximal_order(zi, Int(2)) == zi);  // fixed point

  Order zal = equation_order(split_cubic_field());
  Order o3 = p_maximal_order(zal, Int(2));
  REQUIRE(lattice_index(o3.lattice(), zal.lattice()) == Rat(2, 1));
  REQUIRE(order_disc(zal) == -2012);
  REQUIRE(order_disc(o3) == -503);
}

TEST_CASE("normalize") {
  Order r = order_z2i();
  Order zi = equation_order(r.field());
  REQUIRE(normalize(r) == zi);
  REQUIRE(normalize(zi) == zi);  // idempotent

  FieldPtr k4 = quartic_field();
  REQUIRE(normalize(suborder_index(k4, Int(2))) == equation_order(k4));  // disc 229 squarefree
}

TEST_CASE("normalization invariants") {
  std::vector<Order> orders{order_z2i(), suborder_index(quartic_field(), Int(2)),
                            equation_order(split_cubic_field()), order_r4(),
                            suborder_index(split_cubic_field(), Int(6))};
  for (const Order& r : orders) {
    Order rt = normalize(r);
    REQUIRE(rt.lattice().contains(r.lattice()));
    Rat idx = lattice_index(rt.lattice(), r.lattice());
    REQUIRE(rat_den(idx) == 1);
    REQUIRE(order_disc(r) == order_disc(rt) * rat_num(idx) * rat_num(idx));
    REQUIRE(normalize(rt) == rt);
  }
}

TEST_CASE("normalized orders pass the Dedekind sampling certification") {
  std::vector<Order> orders{normalize(order_z2i()), normalize(equation_order(split_cubic_field())),
                            normalize(suborder_index(quartic_field(), Int(2)))};
  for (const Order& rt : orders) {
    for (const Int& p : primes_up_to(50))
      for (const MaximalIdeal& m : primes_above(rt, p)) {
        FracIdeal m2 = ideal_product(m.ideal, m.ideal);
        REQUIRE(ideal_norm(m2) == Rat(m.residue_size() * m.residue_size(), 1));
      }
  }
}

TEST_CASE("discriminant factorization is certified") {
  DiscFactorization f = factor_disc(Int(-2012));
  REQUIRE(f.complete());
  REQUIRE(f.factors == std::vector<std::pair<Int, int>>{{Int(2), 2}, {Int(503), 1}});
  REQUIRE(f.cofactor == -1);

  // 1000003 is prime; its square survives trial division but certifies
  Int p(1000003);
  DiscFactorization g = factor_disc(p * p * 4);
  REQUIRE_FALSE(g.complete());
  REQUIRE(g.cofactor == p * p);

  DiscFactorization h = factor_disc(p * 4);
  REQUIRE(h.complete());  // prime cofactor is certified
}

TEST_CASE("normalize reports an uncertifiable discriminant") {
  // conductor-p shell with p just beyond the trial bound: disc = -4 p^2
  auto k = gaussian_field();
  Order shell = suborder_index(k, Int(1000003));
  REQUIRE_THROWS_WITH(normalize(shell),
                      Catch::Matchers::ContainsSubstring("FactorizationIncomplete"));
}

TEST_CASE("degree-8 order end to end") {
  // x^8 + 2, Eisenstein at 2
  std::vector<Int> f(9, Int(0));
  f[0] = 2;
  f[8] = 1;
  auto k = NumberField::create(f);
  Order zal = equation_order(k);
  Int disc = order_disc(zal);
  REQUIRE(disc != 0);
  Order rt = normalize(zal);
  REQUIRE(rt.lattice().contains(zal.lattice()));
  Rat idx = lattice_index(rt.lattice(), zal.lattice());
  REQUIRE(rat_den(idx) == 1);
  REQUIRE(order_disc(zal) == order_disc(rt) * rat_num(idx) * rat_num(idx));
  REQUIRE(normalize(rt) == rt);
  // 2 is totally ramified: a unique prime above 2 with residue degree 1
  auto ms = primes_above(rt, Int(2));
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].res_deg == 1);
  FracIdeal m2 = ideal_product(ms[0].ideal, ms[0].ideal);
  REQUIRE(ideal_norm(m2) == Rat(4, 1));  // maximal, so the norm is multiplicative
  // splitting machinery at degree 8: residue degrees above p sum to 8
  for (const Int& p : {Int(3), Int(5)}) {
    FracIdeal pr{rt, rt.lattice().scaled(Rat(p, 1))};
    Int prod = 1;
    for (const MaximalIdeal& m : primes_above(rt, p)) prod *= local_norm(pr, m);
    REQUIRE(prod == pow(p, 8u));
  }
}

TEST_CASE("primality certification spot checks") {
  REQUIRE(is_prime_certified(Int(2)));
  REQUIRE(is_prime_certified(Int(503)));
  REQUIRE_FALSE(is_prime_certified(Int(1)));
  REQUIRE_FALSE(is_prime_certified(Int("25326001")));  // strong pseudoprime to bases 2,3,5
  REQUIRE(is_prime_certified(Int("2305843009213693951")));  // 2^61 - 1
  REQUIRE(is_prime_certified(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
  REQUIRE_FALSE(is_prime_certified(Int("170141183460469231731687303715884105725")));
  Int p61("2305843009213693951");
  REQUIRE_FALSE(is_prime_certified(p61 * p61));
}
