#include "catch_amalgamated.hpp"

#include "normring/lattice.hpp"

using namespace normring;

namespace {

HnfLattice lat(std::initializer_list<Int> entries, int n, Int den = Int(1)) {
  IntMat m(n, n, entries);
  return HnfLattice::from_rows(m, den);
}

// independent membership test for integer sublattices of Z^2 by Cramer
bool member2(const IntMat& basis, const Int& x, const Int& y) {
  Int det = basis(0, 0) * basis(1, 1) - basis(0, 1) * basis(1, 0);
  REQUIRE(det != 0);
  // solve (a,b) * basis = (x,y)
  Int an = x * basis(1, 1) - y * basis(1, 0);
  Int bn = y * basis(0, 0) - x * basis(0, 1);
  return an % det == 0 && bn % det == 0;
}

// counting oracle: [Z^2 : L] by enumerating residues in a periodic box
Int count_index_2d(const IntMat& basis) {
  Int period = abs(basis(0, 0) * basis(1, 1) - basis(0, 1) * basis(1, 0));
  long p = static_cast<long>(period);
  long inside = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (member2(basis, Int(x), Int(y))) ++inside;
  return period * period / inside;
}

IntMat random_unimodular(int n, SplitMix64& rng) {
  IntMat u = IntMat::identity(n);
  for (int step = 0; step < 3 * n; ++step) {
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (i == j) continue;
    u.submul_row(i, j, Int(rng.range(-3, 3)));
  }
  return u;
}

IntMat random_full_rank(int n, SplitMix64& rng) {
  while (true) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Int(rng.range(-9, 9));
    if (m.det() != 0) return m;
  }
}

}  // namespace

TEST_CASE("hnf canonical examples") {
  IntMat m(3, 2, {Int(4), Int(0), Int(0), Int(4), Int(2), Int(2)});
  IntMat h = hnf(m);
  REQUIRE(h == IntMat(2, 2, {Int(2), Int(2), Int(0), Int(4)}));

  REQUIRE(hnf(IntMat::identity(4)) == IntMat::identity(4));

  IntMat contains_basis(3, 2, {Int(1), Int(0), Int(0), Int(1), Int(5), Int(7)});
  REQUIRE(hnf(contains_basis) == IntMat::identity(2));
}

TEST_CASE("hnf rejects rank deficiency") {
  IntMat m(2, 2, {Int(1), Int(2), Int(2), Int(4)});
  REQUIRE_THROWS_AS(hnf(m), Error);
}

TEST_CASE("lattice_index frozen values") {
  HnfLattice z2 = HnfLattice::standard(2);
  HnfLattice b = lat({Int(2), Int(2), Int(0), Int(4)}, 2);
  REQUIRE(lattice_index(z2, b) == Rat(8, 1));
  REQUIRE(count_index_2d(b.basis()) == 8);  // counting oracle agrees

  REQUIRE(lattice_index(b, b) == Rat(1, 1));

  HnfLattice two_z2 = lat({Int(2), Int(0), Int(0), Int(2)}, 2);
  REQUIRE(lattice_index(two_z2, z2) == Rat(1, 4));
  // brute-force route: [A : A cap B] / [B : A cap B]
  HnfLattice meet = lattice_intersect(two_z2, z2);
  REQUIRE(lattice_index(two_z2, meet) / lattice_index(z2, meet) == Rat(1, 4));
}

TEST_CASE("lattice sum and intersection") {
  HnfLattice two = lat({Int(2), Int(0), Int(0), Int(2)}, 2);
  HnfLattice three = lat({Int(3), Int(0), Int(0), Int(3)}, 2);
  REQUIRE(lattice_sum(two, three) == HnfLattice::standard(2));
  REQUIRE(lattice_intersect(two, three) == lat({Int(6), Int(0), Int(0), Int(6)}, 2));
  REQUIRE(lattice_intersect(two, two) == two);
}

TEST_CASE("snf frozen values") {
  std::vector<Int> d = snf(IntMat(2, 2, {Int(2), Int(2), Int(0), Int(4)}));
  REQUIRE(d == std::vector<Int>{Int(2), Int(4)});

  REQUIRE(snf(IntMat::identity(3)) == std::vector<Int>(3, Int(1)));

  IntMat diag(2, 2, {Int(6), Int(0), Int(0), Int(4)});
  std::vector<Int> d2 = snf(diag);
  // oracle: d1 = gcd of entries, d1*d2 = gcd of 2x2 minors (here the det)
  REQUIRE(d2[0] == gcd(Int(6), Int(4)));
  REQUIRE(d2[0] * d2[1] == abs(diag.det()));
  REQUIRE(d2 == std::vector<Int>{Int(2), Int(12)});
}

TEST_CASE("kernel_mod_p examples") {
  IntMat twoi = IntMat::identity(2).scaled(Int(2));
  IntMat k1 = kernel_mod_p(twoi, Int(2));
  REQUIRE(k1 == IntMat::identity(2));

  REQUIRE(kernel_mod_p(IntMat::identity(2), Int(3)).rows() == 0);

  IntMat ones(2, 2, {Int(1), Int(1), Int(1), Int(1)});
  IntMat k2 = kernel_mod_p(ones, Int(2));
  REQUIRE(k2 == IntMat(1, 2, {Int(1), Int(1)}));

  REQUIRE_THROWS_AS(kernel_mod_p(ones, Int(4)), Error);
}

TEST_CASE("hnf canonicity under unimodular change of basis") {
  SplitMix64 rng(0);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMat m = random_full_rank(n, rng);
    IntMat u = random_unimodular(n, rng);
    REQUIRE(hnf(m) == hnf(u * m));
  }
}

TEST_CASE("index tower multiplicativity on nested lattices") {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    HnfLattice a = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(4)));
    IntMat t1 = random_full_rank(n, rng);
    HnfLattice b = HnfLattice::from_rows(t1 * a.basis(), a.den());
    IntMat t2 = random_full_rank(n, rng);
    HnfLattice c = HnfLattice::from_rows(t2 * b.basis(), b.den());
    Rat ab = lattice_index(a, b), bc = lattice_index(b, c), ac = lattice_index(a, c);
    REQUIRE(ab * bc == ac);
    REQUIRE(rat_den(ab) == 1);  // B <= A so the index is an integer
    REQUIRE(rat_den(bc) == 1);
  }
}

TEST_CASE("snf of inclusion matrix matches the index") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    HnfLattice a = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(4)));
    HnfLattice b = HnfLattice::from_rows(random_full_rank(n, rng) * a.basis(), a.den());
    auto inc = a.inclusion_matrix(b);
    REQUIRE(inc.has_value());
    Int prod = 1;
    for (const Int& d : snf(*inc)) prod *= d;
    REQUIRE(Rat(prod, 1) == lattice_index(a, b));
  }
}

TEST_CASE("generalized index: determinant ratio equals the intersection route") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(2));
    HnfLattice a = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(3)));
    HnfLattice b = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(3)));
    HnfLattice meet = lattice_intersect(a, b);
    Rat via_meet = lattice_index(a, meet) / lattice_index(b, meet);
    REQUIRE(lattice_index(a, b) == via_meet);
    REQUIRE(rat_den(lattice_index(a, meet)) == 1);
    REQUIRE(a.contains(meet));
    REQUIRE(b.contains(meet));
  }
}

TEST_CASE("sum and intersection are dual under index") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2;
    HnfLattice a = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(3)));
    HnfLattice b = HnfLattice::from_rows(random_full_rank(n, rng), Int(1 + rng.below(3)));
    HnfLattice join = lattice_sum(a, b);
    HnfLattice meet = lattice_intersect(a, b);
    // [join : a][a : meet] == [join : b][b : meet] == [join : meet]
    REQUIRE(lattice_index(join, a) * lattice_index(a, meet) == lattice_index(join, meet));
    REQUIRE(lattice_index(join, b) * lattice_index(b, meet) == lattice_index(join, meet));
  }
}
