#pragma once

// Finite-dimensional commutative F_p-algebras given by structure constants,
// built as quotients L/M of multiplication-closed lattices with pL <= M <= L.
// Carries the machinery behind primes-above-p: radical via iterated
// Frobenius, semisimple quotient, and idempotent splitting into field
// factors.

#include <vector>

#include "normring/ideal.hpp"

namespace normring {

namespace detail {

// Solve y * A == t over F_p (A given by rows). Free variables are set to
// zero, so the solution is deterministic.
inline std::optional<std::vector<Int>> fp_solve_left(const IntMat& a, const std::vector<Int>& t,
                                                     const Int& p) {
  int k = a.rows(), m = a.cols();
  // column form: m x (k+1) augmented system
  IntMat sys(m, k + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) sys(i, j) = mod_reduce(a(j, i), p);
    sys(i, k) = mod_reduce(t[static_cast<size_t>(i)], p);
  }
  std::vector<int> pivot_col(static_cast<size_t>(m), -1);
  int r = 0;
  for (int j = 0; j < k && r < m; ++j) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (sys(i, j) != 0) { piv = i; break; }
    if (piv < 0) continue;
    sys.swap_rows(r, piv);
    Int inv = inv_mod(sys(r, j), p);
    for (int c = 0; c <= k; ++c) sys(r, c) = mod_reduce(sys(r, c) * inv, p);
    for (int i = 0; i < m; ++i) {
      if (i == r || sys(i, j) == 0) continue;
      Int f = sys(i, j);
      for (int c = 0; c <= k; ++c) sys(i, c) = mod_reduce(sys(i, c) - f * sys(r, c), p);
    }
    pivot_col[static_cast<size_t>(r)] = j;
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (sys(i, k) != 0) return std::nullopt;
  std::vector<Int> y(static_cast<size_t>(k), Int(0));
  for (int i = 0; i < r; ++i) y[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = sys(i, k);
  return y;
}

}  // namespace detail

class FpAlgebra {
 public:
  // Quotient top/bot for a multiplication-closed top with p*top <= bot <= top
  // and top*bot <= bot. Verifies commutativity, associativity and the unit.
  static FpAlgebra quotient(const FieldPtr& k, const HnfLattice& top, const HnfLattice& bot,
                            const Int& p) {
    if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
    int n = k->degree();
    auto inc = top.inclusion_matrix(bot);
    if (!inc || !bot.contains(top.scaled(Rat(p, 1))))
      fail(errc::validation_error, "quotient lattice pair is not p*top <= bot <= top");
    IntMat h = hnf(*inc);
    FpAlgebra a;
    a.p_ = p;
    a.field_ = k;
    a.top_ = top;
    a.hred_ = h;
    for (int i = 0; i < n; ++i) {
      if (h(i, i) == 1) continue;
      if (h(i, i) != p) fail(errc::validation_error, "quotient is not an F_p vector space");
      a.positions_.push_back(i);
    }
    a.dim_ = static_cast<int>(a.positions_.size());
    for (int t : a.positions_) {
      FieldElem e = k->zero();
      for (int j = 0; j < n; ++j) e.c[static_cast<size_t>(j)] = Rat(top.basis()(t, j), top.den());
      a.basis_lift_.push_back(e);
    }
    int d = a.dim_;
    a.sc_.assign(static_cast<size_t>(d) * d * d, Int(0));
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        std::vector<Int> prod = k->mul_int_rows(top.basis().row(a.positions_[static_cast<size_t>(i)]),
                                                top.basis().row(a.positions_[static_cast<size_t>(j)]));
        FieldElem w = k->zero();
        for (int t = 0; t < n; ++t)
          w.c[static_cast<size_t>(t)] = Rat(prod[static_cast<size_t>(t)], top.den() * top.den());
        std::vector<Int> c = a.reduce(w);
        for (int t = 0; t < d; ++t) {
          a.sc_at(i, j, t) = c[static_cast<size_t>(t)];
          a.sc_at(j, i, t) = c[static_cast<size_t>(t)];
        }
      }
    FieldElem one = k->one();
    a.unit_ = a.reduce(one);
    a.verify_axioms();
    return a;
  }

  // Direct construction from structure constants (no lattice provenance).
  static FpAlgebra from_structure_constants(const Int& p, int dim, std::vector<Int> sc) {
    if (!is_prime_certified(p)) fail(errc::not_prime, p.str() + " is not prime");
    if (sc.size() != static_cast<size_t>(dim) * dim * dim)
      fail(errc::validation_error, "structure constant table has wrong size");
    FpAlgebra a;
    a.p_ = p;
    a.dim_ = dim;
    a.sc_ = std::move(sc);
    for (Int& v : a.sc_) v = mod_reduce(v, p);
    // locate the unit by solving u * b_j == b_j for all j simultaneously
    IntMat sys(dim, dim * dim);
    std::vector<Int> target(static_cast<size_t>(dim) * dim, Int(0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int t = 0; t < dim; ++t) sys(i, j * dim + t) = a.sc_at(i, j, t);
    for (int j = 0; j < dim; ++j) target[static_cast<size_t>(j) * dim + j] = 1;
    auto u = detail::fp_solve_left(sys, target, p);
    if (!u) fail(errc::validation_error, "algebra has no unit");
    a.unit_ = *u;
    a.verify_axioms();
    return a;
  }

  const Int& p() const { return p_; }
  int dim() const { return dim_; }
  const std::vector<Int>& unit() const { return unit_; }
  const std::vector<FieldElem>& basis_lift() const { return basis_lift_; }
  bool has_lifts() const { return !basis_lift_.empty(); }

  std::vector<Int> basis_vector(int i) const {
    std::vector<Int> v(static_cast<size_t>(dim_), Int(0));
    v[static_cast<size_t>(i)] = 1;
    return v;
  }

  std::vector<Int> mul(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> out(static_cast<size_t>(dim_), Int(0));
    for (int i = 0; i < dim_; ++i) {
      if (x[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[static_cast<size_t>(j)] == 0) continue;
        Int f = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
        for (int t = 0; t < dim_; ++t) out[static_cast<size_t>(t)] += f * sc_at(i, j, t);
      }
    }
    for (Int& v : out) v = mod_reduce(v, p_);
    return out;
  }

  std::vector<Int> power(std::vector<Int> x, Int e) const {
    std::vector<Int> result = unit_;
    while (e > 0) {
      if (e % 2 == 1) result = mul(result, x);
      x = mul(x, x);
      e /= 2;
    }
    return result;
  }

  // row i = coords of b_i * x
  IntMat mult_matrix(const std::vector<Int>& x) const {
    IntMat m(dim_, dim_);
    for (int i = 0; i < dim_; ++i) m.set_row(i, mul(basis_vector(i), x));
    return m;
  }

  IntMat frobenius_matrix() const {
    IntMat m(dim_, dim_);
    for (int i = 0; i < dim_; ++i) m.set_row(i, power(basis_vector(i), p_));
    return m;
  }

  // Radical = kernel of the e-fold Frobenius iterate, p^e >= dim. Rows in
  // reduced echelon form.
  IntMat radical_rows() const {
    IntMat f = frobenius_matrix();
    Int reach = p_;
    IntMat it = f;
    while (reach < dim_) {
      it = it * f;
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) it(i, j) = mod_reduce(it(i, j), p_);
      reach *= p_;
    }
    return kernel_mod_p(it, p_);
  }

  // Coordinates in the quotient of a field element lying in the top lattice.
  std::vector<Int> reduce(const FieldElem& w) const {
    auto z_opt = top_.coordinates(w.c);
    if (!z_opt) fail(errc::validation_error, "element is not in the quotient's top lattice");
    std::vector<Int> z = *z_opt;
    int n = static_cast<int>(z.size());
    for (int i = 0; i < n; ++i) {
      Int q = fdiv(z[static_cast<size_t>(i)], hred_(i, i));
      if (q != 0)
        for (int j = i; j < n; ++j) z[static_cast<size_t>(j)] -= q * hred_(i, j);
    }
    std::vector<Int> out(static_cast<size_t>(dim_));
    for (int t = 0; t < dim_; ++t) out[static_cast<size_t>(t)] = z[static_cast<size_t>(positions_[static_cast<size_t>(t)])];
    return out;
  }

  FieldElem lift(const std::vector<Int>& coords) const {
    if (!has_lifts()) fail(errc::validation_error, "algebra has no lattice provenance");
    FieldElem out = field_->zero();
    for (int t = 0; t < dim_; ++t)
      if (coords[static_cast<size_t>(t)] != 0)
        out = elem_add(out, elem_scale(basis_lift_[static_cast<size_t>(t)],
                                       Rat(mod_reduce(coords[static_cast<size_t>(t)], p_), 1)));
    return out;
  }

  bool is_commutative() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int t = 0; t < dim_; ++t)
          if (sc_at(i, j, t) != sc_at(j, i, t)) return false;
    return true;
  }

  // dim of the span of the given coordinate vectors
  int span_dim(const std::vector<std::vector<Int>>& vectors) const {
    IntMat m(static_cast<int>(vectors.size()), dim_);
    for (size_t i = 0; i < vectors.size(); ++i) m.set_row(static_cast<int>(i), vectors[i]);
    return rref_mod_p(m, p_).rows();
  }

 private:
  Int& sc_at(int i, int j, int t) { return sc_[(static_cast<size_t>(i) * dim_ + j) * dim_ + t]; }
  const Int& sc_at(int i, int j, int t) const {
    return sc_[(static_cast<size_t>(i) * dim_ + j) * dim_ + t];
  }

  void verify_axioms() const {
    if (!is_commutative()) fail(errc::non_commutative, "structure constants are not symmetric");
    for (int i = 0; i < dim_; ++i) {
      std::vector<Int> b = basis_vector(i);
      if (mul(unit_, b) != b) fail(errc::validation_error, "unit fails on basis element");
    }
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int t = 0; t < dim_; ++t) {
          std::vector<Int> lhs = mul(mul(basis_vector(i), basis_vector(j)), basis_vector(t));
          std::vector<Int> rhs = mul(basis_vector(i), mul(basis_vector(j), basis_vector(t)));
          if (lhs != rhs) fail(errc::validation_error, "associativity fails on basis triple");
        }
  }

  Int p_;
  int dim_ = 0;
  std::vector<Int> sc_;
  std::vector<Int> unit_;
  std::vector<FieldElem> basis_lift_;
  // quotient provenance (unset for synthetic algebras)
  FieldPtr field_;
  HnfLattice top_;
  IntMat hred_;
  std::vector<int> positions_;
};

// ---------------------------------------------------------------------------
// Semisimple decomposition: A -> B = A/rad -> product of finite fields.
// ---------------------------------------------------------------------------

struct FieldComponent {
  std::vector<Int> idempotent;  // primitive idempotent, B-coordinates
  IntMat basis;                 // rows spanning e*B, B-coordinates (rref)
  int deg = 0;                  // residue degree, = basis.rows()
};

struct ResidueSplit {
  FpAlgebra a;                  // the input algebra
  IntMat radical;               // rref rows in A-coordinates
  IntMat embed;                 // b_dim x a_dim section: B basis as A-coordinates
  std::vector<Int> b_unit;      // unit of B
  int b_dim = 0;
  std::vector<FieldComponent> fields;

  // multiplication inside B via lifting through the section and reducing
  std::vector<Int> mul_b(const FpAlgebra& alg, const std::vector<Int>& x,
                         const std::vector<Int>& y) const;
  std::vector<Int> project_b(const std::vector<Int>& a_coords) const;
};

namespace detail {

// reduce an A-coordinate vector modulo the (rref) radical rows, then read the
// complement coordinates
struct RadicalReducer {
  IntMat rad;                 // rref rows
  std::vector<int> rad_pivots;
  std::vector<int> complement;  // non-pivot columns, ascending
  Int p;

  static RadicalReducer build(const IntMat& rad, int dim, const Int& p) {
    RadicalReducer rr;
    rr.rad = rad;
    rr.p = p;
    std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
    for (int i = 0; i < rad.rows(); ++i) {
      int j = 0;
      while (j < dim && rad(i, j) == 0) ++j;
      rr.rad_pivots.push_back(j);
      is_pivot[static_cast<size_t>(j)] = true;
    }
    for (int j = 0; j < dim; ++j)
      if (!is_pivot[static_cast<size_t>(j)]) rr.complement.push_back(j);
    return rr;
  }

  std::vector<Int> project(const std::vector<Int>& x) const {
    std::vector<Int> v = x;
    for (size_t i = 0; i < rad_pivots.size(); ++i) {
      int j = rad_pivots[i];
      Int f = mod_reduce(v[static_cast<size_t>(j)], p);
      if (f == 0) continue;
      for (size_t c = 0; c < v.size(); ++c)
        v[c] = mod_reduce(v[c] - f * rad(static_cast<int>(i), static_cast<int>(c)), p);
    }
    std::vector<Int> out(complement.size());
    for (size_t t = 0; t < complement.size(); ++t)
      out[t] = mod_reduce(v[static_cast<size_t>(complement[t])], p);
    return out;
  }
};

}  // namespace detail

inline std::vector<Int> ResidueSplit::project_b(const std::vector<Int>& a_coords) const {
  auto rr = detail::RadicalReducer::build(radical, a.dim(), a.p());
  return rr.project(a_coords);
}

inline std::vector<Int> ResidueSplit::mul_b(const FpAlgebra& alg, const std::vector<Int>& x,
                                            const std::vector<Int>& y) const {
  // lift to A through the section, multiply, project back
  std::vector<Int> xa(static_cast<size_t>(alg.dim()), Int(0));
  std::vector<Int> ya(static_cast<size_t>(alg.dim()), Int(0));
  for (int i = 0; i < b_dim; ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      xa[static_cast<size_t>(j)] += x[static_cast<size_t>(i)] * embed(i, j);
      ya[static_cast<size_t>(j)] += y[static_cast<size_t>(i)] * embed(i, j);
    }
  return project_b(alg.mul(xa, ya));
}

// Split A into its field factors above the radical. Deterministic: the
// splitter-element stream is basis vectors, then pairwise sums, then
// products, then seeded pseudo-random combinations.
inline ResidueSplit split_residue(const FpAlgebra& a, std::uint64_t seed = 0) {
  ResidueSplit out;
  out.a = a;
  out.radical = a.radical_rows();
  const Int& p = a.p();
  auto rr = detail::RadicalReducer::build(out.radical, a.dim(), p);
  out.b_dim = static_cast<int>(rr.complement.size());
  out.embed = IntMat(out.b_dim, a.dim());
  for (int i = 0; i < out.b_dim; ++i) out.embed(i, rr.complement[static_cast<size_t>(i)]) = 1;
  out.b_unit = rr.project(a.unit());

  auto mulb = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
    return out.mul_b(a, x, y);
  };
  auto is_zero = [](const std::vector<Int>& v) {
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  };

  struct Component {
    std::vector<Int> e;  // idempotent (unit of the component)
    IntMat basis;        // rref rows spanning e*B
  };
  auto component_basis = [&](const std::vector<Int>& e) {
    IntMat rows(out.b_dim, out.b_dim);
    for (int i = 0; i < out.b_dim; ++i) {
      std::vector<Int> bi(static_cast<size_t>(out.b_dim), Int(0));
      bi[static_cast<size_t>(i)] = 1;
      rows.set_row(i, mulb(bi, e));
    }
    return rref_mod_p(rows, p);
  };

  std::vector<Component> done;
  std::vector<Component> work;
  if (out.b_dim > 0) work.push_back({out.b_unit, component_basis(out.b_unit)});

  while (!work.empty()) {
    Component comp = work.back();
    work.pop_back();
    int d = comp.basis.rows();
    if (d == 1) {
      done.push_back(comp);
      continue;
    }
    // element stream inside the component
    SplitMix64 rng(seed ^ 0xa5a5a5a5deadbeefULL);
    std::vector<std::vector<Int>> stream;
    for (int i = 0; i < d; ++i) stream.push_back(comp.basis.row(i));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        std::vector<Int> s = comp.basis.row(i);
        for (int t = 0; t < out.b_dim; ++t)
          s[static_cast<size_t>(t)] = mod_reduce(s[static_cast<size_t>(t)] + comp.basis(j, t), p);
        stream.push_back(s);
      }
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) stream.push_back(mulb(comp.basis.row(i), comp.basis.row(j)));

    bool resolved = false;
    for (size_t step = 0; step < 4096 && !resolved; ++step) {
      std::vector<Int> cand;
      if (step < stream.size()) {
        cand = stream[step];
      } else {
        cand.assign(static_cast<size_t>(out.b_dim), Int(0));
        for (int i = 0; i < d; ++i) {
          Int c = Int(rng.next() % 1000003) % p;
          for (int t = 0; t < out.b_dim; ++t)
            cand[static_cast<size_t>(t)] =
                mod_reduce(cand[static_cast<size_t>(t)] + c * comp.basis(i, t), p);
        }
      }
      if (is_zero(cand)) continue;
      // minimal polynomial of cand over F_p inside the component
      std::vector<std::vector<Int>> pows{comp.e};
      std::vector<Int> cur = comp.e;
      FpPoly minpoly;
      while (true) {
        cur = mulb(cur, cand);
        IntMat mat(static_cast<int>(pows.size()), out.b_dim);
        for (size_t i = 0; i < pows.size(); ++i) mat.set_row(static_cast<int>(i), pows[i]);
        auto rep = detail::fp_solve_left(mat, cur, p);
        if (rep) {
          std::vector<Int> coeffs;
          for (const Int& c : *rep) coeffs.push_back(mod_reduce(-c, p));
          coeffs.push_back(1);
          minpoly = fp_poly(p, coeffs);
          break;
        }
        pows.push_back(cur);
      }
      auto factors = fp_factor(minpoly, seed ^ 0x1234567ULL);
      if (factors.size() == 1 && factors.front().second == 1) {
        if (minpoly.degree() == d) {
          done.push_back(comp);  // primitive element: the component is a field
          resolved = true;
        }
        continue;  // irreducible but not primitive: try the next element
      }
      // reducible (squarefree here): CRT idempotent from the first factor
      FpPoly g = factors.front().first;
      FpPoly q, r;
      fp_divmod(minpoly, g, q, r);
      FpPoly h = fp_monic(q);
      FpPoly u, v;
      FpPoly gg = fp_xgcd(g, h, u, v);
      if (gg.degree() != 0)
        fail(errc::validation_error, "minimal polynomial not squarefree in semisimple algebra");
      // e1 = (v*h)(cand); acts as 1 on the g-part and 0 on the h-part.
      // Horner evaluation with the component unit standing in for constants.
      FpPoly vh = fp_mul(v, h);
      std::vector<Int> e1(static_cast<size_t>(out.b_dim), Int(0));
      for (int i = static_cast<int>(vh.c.size()) - 1; i >= 0; --i) {
        e1 = mulb(e1, cand);
        if (vh.c[static_cast<size_t>(i)] != 0)
          for (int t = 0; t < out.b_dim; ++t)
            e1[static_cast<size_t>(t)] = mod_reduce(
                e1[static_cast<size_t>(t)] + vh.c[static_cast<size_t>(i)] * comp.e[static_cast<size_t>(t)], p);
      }
      if (is_zero(e1) || e1 == comp.e || mulb(e1, e1) != e1)
        fail(errc::validation_error, "idempotent construction failed");
      std::vector<Int> e2(static_cast<size_t>(out.b_dim));
      for (int t = 0; t < out.b_dim; ++t)
        e2[static_cast<size_t>(t)] = mod_reduce(comp.e[static_cast<size_t>(t)] - e1[static_cast<size_t>(t)], p);
      work.push_back({e1, component_basis(e1)});
      work.push_back({e2, component_basis(e2)});
      resolved = true;
    }
    if (!resolved)
      fail(errc::validation_error, "no splitting element found (exceeded search cap)");
  }

  for (const Component& c : done)
    out.fields.push_back(FieldComponent{c.e, c.basis, c.basis.rows()});
  // deterministic order
  std::sort(out.fields.begin(), out.fields.end(), [](const FieldComponent& x, const FieldComponent& y) {
    if (x.deg != y.deg) return x.deg < y.deg;
    return x.idempotent < y.idempotent;
  });
  return out;
}

}  // namespace normring
