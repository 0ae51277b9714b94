#include "catch_amalgamated.hpp"

#include "normring/audit.hpp"
#include "normring/reproduce.hpp"

using namespace normring;

namespace {

std::vector<std::pair<Int, Int>> quadratic_suite(int count) {
  // squarefree d with |field disc| <= 10^4, paired with conductors <= 50
  std::vector<long long> ds{-1, -2, -3, -5, -6, -7, -10, -11, -13, -15,
                            2,  3,  5,  6,  7,  10, 11,  13,  14,  15};
  std::vector<long long> cs{2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 18, 20, 24, 30, 36, 40, 45, 48, 50};
  std::vector<std::pair<Int, Int>> out;
  for (int i = 0; i < count; ++i)
    out.emplace_back(Int(ds[static_cast<size_t>(i) % ds.size()]),
                     Int(cs[static_cast<size_t>(i) % cs.size()]));
  return out;
}

}  // namespace

TEST_CASE("trichotomy: field case") {
  FieldPtr k = quartic_field();
  Order zal = equation_order(k);
  FpAlgebra a = FpAlgebra::quotient(k, zal.lattice(), zal.lattice().scaled(Rat(2, 1)), Int(2));
  REQUIRE(a.dim() == 4);
  Trichotomy t = classify_algebra(a);
  REQUIRE(t.kind == Trichotomy::Case::I);
  REQUIRE(t.x_lift.has_value());
  REQUIRE(*t.x_lift == k->alpha_power(1));
  REQUIRE(*t.y_lift == k->alpha_power(2));
  // witness certificate: 1, x, y, xy span a 4-dimensional space
  REQUIRE(a.span_dim({a.unit(), t.x_coords, t.y_coords, a.mul(t.x_coords, t.y_coords)}) == 4);
}

TEST_CASE("trichotomy: square-zero case") {
  // F_2[u,v,w]/(u,v,w)^2: basis 1,u,v,w with all products of u,v,w zero
  int d = 4;
  std::vector<Int> sc(static_cast<size_t>(d * d * d), Int(0));
  auto at = [&](int i, int j, int t) -> Int& {
    return sc[static_cast<size_t>((i * d + j) * d + t)];
  };
  for (int i = 0; i < d; ++i) {
    at(0, i, i) = 1;
    at(i, 0, i) = 1;
  }
  at(0, 0, 0) = 1;
  FpAlgebra a = FpAlgebra::from_structure_constants(Int(2), d, sc);
  Trichotomy t = classify_algebra(a);
  REQUIRE(t.kind == Trichotomy::Case::II);
  REQUIRE(t.radical_basis.rows() == 3);
}

TEST_CASE("trichotomy: dimension guard") {
  FieldPtr k = split_cubic_field();
  Order zal = equation_order(k);
  FpAlgebra a = FpAlgebra::quotient(k, zal.lattice(), zal.lattice().scaled(Rat(2, 1)), Int(2));
  REQUIRE_THROWS_WITH(classify_algebra(a), Catch::Matchers::ContainsSubstring("DimTooSmall"));
}

TEST_CASE("counterexample construction on Z + 2Z[alpha]") {
  FieldPtr k = quartic_field();
  Order r2 = suborder_index(k, Int(2));
  Order rt = equation_order(k);
  auto m = primes_above(r2, Int(2)).front();
  Counterexample ce = construct_counterexample(r2, m, rt);
  REQUIRE(ce.idx_i == 2);
  REQUIRE(ce.idx_j == 2);
  REQUIRE(ce.idx_ij == 8);
  REQUIRE(ce.extension == r2);  // R + mRt = R here
  // exact violation certificate as fractional ideals over R'
  Rat ni = ideal_norm(ce.i), nj = ideal_norm(ce.j);
  Rat nij = ideal_norm(ideal_product(ce.i, ce.j));
  REQUIRE(ni * nj > nij);
}

TEST_CASE("counterexample preconditions") {
  FieldPtr k = quartic_field();
  Order r2 = suborder_index(k, Int(2));
  Order rt = equation_order(k);
  auto m3 = primes_above(r2, Int(3)).front();  // non-singular
  REQUIRE_THROWS_WITH(construct_counterexample(r2, m3, rt),
                      Catch::Matchers::ContainsSubstring("PreconditionViolated"));

  Order o3 = normalize(equation_order(split_cubic_field()));
  Order r3 = shell_order(o3, Int(2));
  auto m2 = primes_above(r3, Int(2)).front();
  REQUIRE(detail::g_local_unchecked(r3, m2, o3) == 3);
  REQUIRE_THROWS_WITH(construct_counterexample(r3, m2, o3),
                      Catch::Matchers::ContainsSubstring("PreconditionViolated"));
}

TEST_CASE("supermult sampling: maximal order is clean") {
  Order zi = equation_order(gaussian_field());
  AuditConfig cfg;
  cfg.trials = 60;
  AuditReport rep = supermult_sample(zi, cfg);
  REQUIRE(rep.clean());
  REQUIRE(rep.trials_run >= 60);
}

TEST_CASE("supermult sampling: structured probes expose the quartic violation") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  AuditConfig cfg;
  cfg.trials = 0;
  cfg.probes = true;
  AuditReport rep = supermult_sample(r2, cfg);
  REQUIRE_FALSE(rep.clean());
  bool found = false;
  for (const PairRecord& v : rep.violations)
    found = found || (v.n_i == Rat(8, 1) && v.n_j == Rat(8, 1) && v.n_ij == Rat(32, 1));
  REQUIRE(found);
}

TEST_CASE("supermult sampling: empty config yields an empty report") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  AuditConfig cfg;
  cfg.trials = 0;
  cfg.probes = false;
  AuditReport rep = supermult_sample(r2, cfg);
  REQUIRE(rep.trials_run == 0);
  REQUIRE(rep.rows.empty());
  REQUIRE(rep.clean());
}

TEST_CASE("violations replay exactly from the stored bases") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  AuditConfig cfg;
  cfg.trials = 40;
  cfg.probes = true;
  AuditReport rep = supermult_sample(r2, cfg);
  REQUIRE_FALSE(rep.violations.empty());
  for (const PairRecord& v : rep.violations) {
    FracIdeal i = ideal_from_lattice(r2, v.i_lattice);
    FracIdeal j = ideal_from_lattice(r2, v.j_lattice);
    REQUIRE(ideal_norm(i) == v.n_i);
    REQUIRE(ideal_norm(j) == v.n_j);
    REQUIRE(ideal_norm(ideal_product(i, j)) == v.n_ij);
    REQUIRE(v.n_i * v.n_j > v.n_ij);
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  AuditConfig cfg;
  cfg.trials = 25;
  cfg.seed = 42;
  AuditReport a = supermult_sample(r2, cfg);
  AuditReport b = supermult_sample(r2, cfg);
  REQUIRE(a.trials_run == b.trials_run);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t t = 0; t < a.rows.size(); ++t) {
    REQUIRE(a.rows[t].n_i == b.rows[t].n_i);
    REQUIRE(a.rows[t].n_j == b.rows[t].n_j);
    REQUIRE(a.rows[t].n_ij == b.rows[t].n_ij);
  }
}

TEST_CASE("every global violation localizes") {
  Order r2 = suborder_index(quartic_field(), Int(2));
  AuditConfig cfg;
  cfg.trials = 30;
  cfg.probes = true;
  AuditReport rep = supermult_sample(r2, cfg);
  REQUIRE_FALSE(rep.violations.empty());
  for (const PairRecord& v : rep.violations) {
    FracIdeal i = ideal_from_lattice(r2, v.i_lattice);
    FracIdeal j = ideal_from_lattice(r2, v.j_lattice);
    FracIdeal ij = ideal_product(i, j);
    // localize over the primes dividing the three norms
    Factorization fact = factor_integer(rat_num(v.n_ij) * rat_num(v.n_i) * rat_num(v.n_j));
    REQUIRE(fact.complete());
    Int prod_i = 1, prod_j = 1, prod_ij = 1;
    bool strict_somewhere = false;
    for (const auto& [p, e] : fact.factors) {
      (void)e;
      for (const MaximalIdeal& m : primes_above(r2, p)) {
        Int li = local_norm(i, m), lj = local_norm(j, m), lij = local_norm(ij, m);
        prod_i *= li;
        prod_j *= lj;
        prod_ij *= lij;
        strict_somewhere = strict_somewhere || li * lj > lij;
      }
    }
    REQUIRE(prod_i == rat_num(v.n_i));
    REQUIRE(prod_j == rat_num(v.n_j));
    REQUIRE(prod_ij == rat_num(v.n_ij));
    REQUIRE(strict_somewhere);
  }
}

TEST_CASE("length inequality at three-generated products") {
  SplitMix64 rng(41);
  Order r3 = shell_order(normalize(equation_order(split_cubic_field())), Int(2));
  Order rt = normalize(r3);
  GlobalG g = g_global(r3, rt);
  REQUIRE(g.max_local == 3);
  auto random_integral = [&]() {
    while (true) {
      std::vector<FieldElem> gens;
      int count = 1 + static_cast<int>(rng.below(3));
      bool nonzero = false;
      for (int c = 0; c < count; ++c) {
        FieldElem e = r3.field()->zero();
        for (int t = 0; t < 3; ++t) e.c[static_cast<size_t>(t)] = Rat(Int(rng.range(-4, 4)), 1);
        nonzero = nonzero || !e.is_zero();
        gens.push_back(e);
      }
      if (!nonzero) continue;
      FracIdeal i = ideal_generate(r3, gens);
      return ideal_scaled(i, Rat(ideal_integral_scale(i), 1));
    }
  };
  int checked = 0;
  for (int t = 0; t < 15; ++t) {
    FracIdeal i = random_integral();
    FracIdeal j = random_integral();
    FracIdeal ij = ideal_product(i, j);
    for (const auto& [m, gl] : g.per_prime) {
      (void)gl;
      if (min_generators_at(ij, m) > 3) continue;
      REQUIRE(local_norm(i, m) * local_norm(j, m) <= local_norm(ij, m));
      ++checked;
    }
  }
  REQUIRE(checked > 0);
}

TEST_CASE("dedekind detector") {
  DedekindReport fail_rep = dedekind_test(order_z2i(), 50);
  REQUIRE_FALSE(fail_rep.consistent);
  auto bad = fail_rep.first_failure();
  REQUIRE(bad.has_value());
  REQUIRE(bad->p == 2);
  REQUIRE(bad->norm_m == 2);
  REQUIRE(bad->norm_m2 == 8);

  REQUIRE(dedekind_test(equation_order(gaussian_field()), 50).consistent);
  REQUIRE(dedekind_test(normalize(equation_order(split_cubic_field())), 50).consistent);

  REQUIRE_THROWS_AS(dedekind_test(order_z2i(), 1), Error);
}

TEST_CASE("quadratic orders are super-multiplicative (sampled)") {
  int violations = 0;
  for (const auto& [d, c] : quadratic_suite(6)) {
    auto k = NumberField::create({Int(-d), Int(0), Int(1)});
    Order r = shell_order(normalize(equation_order(k)), c);
    AuditConfig cfg;
    cfg.trials = 12;
    cfg.probes = true;
    violations += static_cast<int>(supermult_sample(r, cfg).violations.size());
  }
  REQUIRE(violations == 0);
}

TEST_CASE("theorem-level audit, both branches") {
  AuditConfig cfg;
  cfg.trials = 15;

  Order r = order_z2i();
  Theorem11Report quad = theorem11_audit(r, normalize(r), cfg);
  REQUIRE(quad.g.max_local == 2);
  REQUIRE_FALSE(quad.counterexample.has_value());
  REQUIRE(quad.base_audit.clean());
  for (const ExtensionAudit& e : quad.extensions) REQUIRE(e.audit.clean());
  REQUIRE_THAT(quad.verdict, Catch::Matchers::ContainsSubstring("consistent"));

  Order r2 = suborder_index(quartic_field(), Int(2));
  Theorem11Report quart = theorem11_audit(r2, normalize(r2), cfg);
  REQUIRE(quart.g.max_local == 4);
  REQUIRE(quart.counterexample.has_value());
  REQUIRE(quart.counterexample->idx_ij > quart.counterexample->idx_i * quart.counterexample->idx_j);

  Order zi = equation_order(gaussian_field());
  Theorem11Report ded = theorem11_audit(zi, zi, cfg);
  REQUIRE(ded.g.max_local == 1);
  REQUIRE(ded.base_audit.clean());
}

TEST_CASE("theorem-level audit at the g = 3 boundary") {
  // Z + 2*O3 sits exactly on the 3-generator bound: sampling only, expected
  // clean, with the ideals-between-R'-and-Rt probes included
  Order o3 = normalize(equation_order(split_cubic_field()));
  Order r3 = shell_order(o3, Int(2));
  AuditConfig cfg;
  cfg.trials = 40;
  Theorem11Report rep = theorem11_audit(r3, o3, cfg);
  REQUIRE(rep.g.max_local == 3);
  REQUIRE_FALSE(rep.counterexample.has_value());
  REQUIRE(rep.base_audit.clean());
  REQUIRE_FALSE(rep.extensions.empty());
  bool probes_present = false;
  for (const TrialRow& row : rep.base_audit.rows)
    probes_present = probes_present || row.source.find("one-x-mRt") != std::string::npos;
  REQUIRE(probes_present);
  for (const ExtensionAudit& e : rep.extensions) REQUIRE(e.audit.clean());
  REQUIRE_THAT(rep.verdict, Catch::Matchers::ContainsSubstring("consistent"));
}

TEST_CASE("theorem-level audit finds the violation hiding above R4") {
  // R4 itself samples clean, but its g reaches 4 and the audit must surface
  // the constructive violation in the extension R4 + mRt
  Order r4 = order_r4();
  AuditConfig cfg;
  cfg.trials = 10;
  Theorem11Report rep = theorem11_audit(r4, normalize(r4), cfg);
  REQUIRE(rep.g.max_local == 4);
  REQUIRE(rep.counterexample.has_value());
  const Counterexample& ce = *rep.counterexample;
  REQUIRE(ce.extension == suborder_index(quartic_field(), Int(2)));
  REQUIRE(ce.idx_ij > ce.idx_i * ce.idx_j);
}
