#pragma once

// Fixed example suite: the worked examples the library is expected to
// reproduce bit-exactly, plus the builders for the recurring orders (the
// quartic suborders, the split cubic and its non-generated ideal). Used by
// the CLI `reproduce paper` command and by the acceptance tests.

#include <functional>
#include <string>
#include <vector>

#include "normring/audit.hpp"

namespace normring {

inline FieldPtr gaussian_field() { return NumberField::create({Int(1), Int(0), Int(1)}); }

inline FieldPtr quartic_field() {
  return NumberField::create({Int(1), Int(1), Int(0), Int(0), Int(1)});  // x^4 + x + 1
}

inline FieldPtr split_cubic_field() {
  return NumberField::create({Int(-8), Int(-2), Int(-1), Int(1)});  // x^3 - x^2 - 2x - 8
}

inline Order order_z2i() {
  FieldPtr k = gaussian_field();
  return order_create(k, {k->one(), elem_scale(k->alpha_power(1), Rat(2, 1))});
}

// Z (+) 2aZ (+) 2a^2 Z (+) 4a^3 Z inside the quartic field
inline Order order_r4() {
  FieldPtr k = quartic_field();
  IntMat rows(4, 4);
  rows(0, 0) = 1;
  rows(1, 1) = 2;
  rows(2, 2) = 2;
  rows(3, 3) = 4;
  return order_from_lattice(k, HnfLattice::from_rows(rows, Int(1)));
}

// Z + c * O for an order O (the conductor-c shell around O)
inline Order shell_order(const Order& o, const Int& c) {
  int n = o.degree();
  IntMat rows(n + 1, n);
  std::vector<Int> one(static_cast<size_t>(n), Int(0));
  one[0] = o.lattice().den();
  rows.set_row(0, one);
  for (int i = 0; i < n; ++i) {
    std::vector<Int> r = o.lattice().basis().row(i);
    for (Int& v : r) v *= c;
    rows.set_row(i + 1, r);
  }
  return order_from_lattice(o.field(), HnfLattice::from_rows(rows, o.lattice().den()));
}

// The ideal of R = Z + 2*O3 whose extension to O3 is O3 itself but which
// contains no generator of that extension: the preimage in O3 of the span of
// the even-weight vectors of O3/2O3 = F_2 x F_2 x F_2.
inline FracIdeal lenstra_split_ideal(const Order& r3, const Order& o3) {
  const FieldPtr& k = o3.field();
  FpAlgebra a = FpAlgebra::quotient(k, o3.lattice(), o3.lattice().scaled(Rat(2, 1)), Int(2));
  ResidueSplit split = split_residue(a);
  if (split.fields.size() != 3 || split.radical.rows() != 0)
    fail(errc::validation_error, "expected a totally split semisimple residue algebra");
  std::vector<std::vector<Int>> idem;
  for (const FieldComponent& f : split.fields) {
    std::vector<Int> ea(static_cast<size_t>(a.dim()), Int(0));
    for (int i = 0; i < split.b_dim; ++i)
      for (int j = 0; j < a.dim(); ++j)
        ea[static_cast<size_t>(j)] += f.idempotent[static_cast<size_t>(i)] * split.embed(i, j);
    for (Int& v : ea) v = mod_reduce(v, Int(2));
    idem.push_back(ea);
  }
  IntMat rows = o3.lattice().basis().scaled(Int(2));
  for (int t = 0; t < 2; ++t) {  // e1+e2 and e2+e3 span the even-weight plane
    std::vector<Int> w(static_cast<size_t>(a.dim()));
    for (int j = 0; j < a.dim(); ++j)
      w[static_cast<size_t>(j)] =
          mod_reduce(idem[static_cast<size_t>(t)][static_cast<size_t>(j)] +
                         idem[static_cast<size_t>(t + 1)][static_cast<size_t>(j)],
                     Int(2));
    std::vector<Int> num(static_cast<size_t>(o3.degree()), Int(0));
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < o3.degree(); ++j)
        num[static_cast<size_t>(j)] += w[static_cast<size_t>(i)] * o3.lattice().basis()(i, j);
    IntMat wm(1, o3.degree());
    wm.set_row(0, num);
    rows = rows.stacked(wm);
  }
  return ideal_from_lattice(r3, HnfLattice::from_rows(rows, o3.lattice().den()));
}

// ---------------------------------------------------------------------------
// The reproduction table.
// ---------------------------------------------------------------------------

struct ReproRow {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReproTable {
  std::vector<ReproRow> rows;
  bool all_pass = true;

  void add(const std::string& name, const std::string& expected, const std::string& computed) {
    bool ok = expected == computed;
    rows.push_back(ReproRow{name, expected, computed, ok});
    all_pass = all_pass && ok;
  }
};

inline ReproTable reproduce_paper(const std::vector<Int>& p_list = {Int(2), Int(3), Int(5)},
                                  std::uint64_t seed = 0) {
  ReproTable t;

  {  // quadratic intro example
    Order r = order_z2i();
    FieldPtr k = r.field();
    FracIdeal i = ideal_generate(r, {elem_scale(k->one(), Rat(2, 1)),
                                     elem_scale(k->alpha_power(1), Rat(2, 1))});
    t.add("Z[2i]: N(I) for I=(2,2i)", "2", ideal_norm(i).str());
    t.add("Z[2i]: N(I^2)", "8", ideal_norm(ideal_product(i, i)).str());
  }

  for (const Int& p : p_list) {  // degree-4 suborder example
    FieldPtr k = quartic_field();
    Order r = suborder_index(k, p);
    Rat pr(p, 1);
    FieldElem pe = elem_scale(k->one(), pr);
    FieldElem pa = elem_scale(k->alpha_power(1), pr);
    FieldElem pa2 = elem_scale(k->alpha_power(2), pr);
    FieldElem pa3 = elem_scale(k->alpha_power(3), pr);
    FracIdeal i = ideal_generate(r, {pe, pa});
    FracIdeal j = ideal_generate(r, {pe, pa2});
    FracIdeal m = ideal_generate(r, {pe, pa, pa2, pa3});
    FracIdeal ij = ideal_product(i, j);
    FracIdeal im = ideal_product(i, m);
    std::string tag = "deg4 p=" + p.str() + ": ";
    Int p2 = p * p;
    auto diag_lattice = [&](std::vector<Int> d) {
      IntMat rows(4, 4);
      for (int idx = 0; idx < 4; ++idx) rows(idx, idx) = d[static_cast<size_t>(idx)];
      return HnfLattice::from_rows(rows, Int(1));
    };
    t.add(tag + "I decomposes as pZ+paZ+p^2a^2Z+p^2a^3Z", "yes",
          i.lattice == diag_lattice({p, p, p2, p2}) ? "yes" : "no");
    t.add(tag + "J decomposes as pZ+p^2aZ+pa^2Z+p^2a^3Z", "yes",
          j.lattice == diag_lattice({p, p2, p, p2}) ? "yes" : "no");
    t.add(tag + "M decomposes as p*Z[alpha]", "yes",
          m.lattice == diag_lattice({p, p, p, p}) ? "yes" : "no");
    t.add(tag + "IJ = IM = p^2*Z[alpha]", "yes",
          (ij.lattice == diag_lattice({p2, p2, p2, p2}) && im.lattice == ij.lattice) ? "yes" : "no");
    t.add(tag + "N(I)", Int(pow(p, 3)).str(), ideal_norm(i).str());
    t.add(tag + "N(J)", Int(pow(p, 3)).str(), ideal_norm(j).str());
    t.add(tag + "N(M)", p.str(), ideal_norm(m).str());
    t.add(tag + "N(IJ)", Int(pow(p, 5)).str(), ideal_norm(ij).str());
    t.add(tag + "N(IM)", Int(pow(p, 5)).str(), ideal_norm(im).str());
    t.add(tag + "N(I)N(J) > N(IJ) and N(I)N(M) < N(IM)", "yes",
          (ideal_norm(i) * ideal_norm(j) > ideal_norm(ij) &&
           ideal_norm(i) * ideal_norm(m) < ideal_norm(im))
              ? "yes"
              : "no");
  }

  {  // split cubic: extension generated, but by no element of the ideal
    FieldPtr k = split_cubic_field();
    Order o3 = normalize(equation_order(k));
    Order r3 = shell_order(o3, Int(2));
    FracIdeal j3 = lenstra_split_ideal(r3, o3);
    t.add("split cubic: J3*O3 == O3", "yes",
          module_product(k, j3.lattice, o3.lattice()) == o3.lattice() ? "yes" : "no");
    auto gen = find_extension_generator(j3, o3, Int(2));
    t.add("split cubic: generator of J3*O3 inside J3", "NotFound",
          gen ? "found" : "NotFound");
  }

  {  // final quartic analog
    Order r4 = order_r4();
    FieldPtr k = r4.field();
    Order rt = normalize(r4);
    auto ms = primes_above(r4, Int(2));
    t.add("R4: one maximal ideal above 2", "1", std::to_string(ms.size()));
    const MaximalIdeal& m = ms.front();
    FracIdeal colon = colon_ideal(unit_ideal(r4), m.ideal);
    t.add("R4: [(R4:m):R4]", "2", lattice_index(colon.lattice, r4.lattice()).str());
    Counterexample ce = construct_counterexample(r4, m, rt, seed);
    t.add("R4': violation indices [I:R'],[J:R'],[IJ:R']", "2,2,8",
          ce.idx_i.str() + "," + ce.idx_j.str() + "," + ce.idx_ij.str());
    AuditConfig cfg;
    cfg.seed = seed;
    cfg.trials = 500;
    cfg.probes = true;
    AuditReport rep = supermult_sample(r4, cfg);
    t.add("R4 sampled audit (>=500 pairs, probes on): violations", "0 (consistent)",
          rep.clean() ? "0 (consistent)" : std::to_string(rep.violations.size()));
  }

  return t;
}

inline std::string repro_table_text(const ReproTable& t) {
  size_t w = 0;
  for (const ReproRow& r : t.rows) w = std::max(w, r.name.size());
  std::string out;
  for (const ReproRow& r : t.rows) {
    out += (r.pass ? "PASS  " : "FAIL  ") + r.name;
    out.append(w - r.name.size() + 2, ' ');
    out += "expected " + r.expected + ", computed " + r.computed + "\n";
  }
  out += t.all_pass ? "all rows PASS\n" : "MISMATCH: at least one row failed\n";
  return out;
}

}  // namespace normring
