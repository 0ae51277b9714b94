#pragma once

// Number fields Q[x]/(f) for monic integral f, with exact element arithmetic
// in the power basis 1, alpha, ..., alpha^{n-1}. Every element is a vector of
// rationals in that one global frame; orders and ideals never introduce their
// own coordinate systems.

#include <memory>
#include <string>
#include <vector>

#include "normring/fppoly.hpp"
#include "normring/intmat.hpp"

namespace normring {

struct FieldElem {
  std::vector<Rat> c;

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const Rat& v : c)
      if (v != 0) return false;
    return true;
  }
  bool operator==(const FieldElem& o) const { return c == o.c; }
  bool operator!=(const FieldElem& o) const { return c != o.c; }
};

inline FieldElem elem_add(const FieldElem& a, const FieldElem& b) {
  FieldElem out = a;
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

inline FieldElem elem_sub(const FieldElem& a, const FieldElem& b) {
  FieldElem out = a;
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
  return out;
}

inline FieldElem elem_scale(const FieldElem& a, const Rat& s) {
  FieldElem out = a;
  for (Rat& v : out.c) v *= s;
  return out;
}

// common denominator and the matching integer coordinate row
inline Int elem_den(const FieldElem& a) {
  Int d = 1;
  for (const Rat& v : a.c) d = lcm(d, rat_den(v));
  return d;
}

inline std::vector<Int> elem_num_row(const FieldElem& a, const Int& den) {
  std::vector<Int> out(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) out[i] = rat_num(a.c[i] * den);
  return out;
}

struct IrredCertificate {
  std::string method;  // "irreducible_mod_p" | "exclusion_search" | "assumed"
  Int witness_prime = 0;
  bool assumed = false;
};

class NumberField {
 public:
  // f: coefficient list, constant term first, monic, degree >= 2.
  static std::shared_ptr<const NumberField> create(const std::vector<Int>& f,
                                                   bool assume_irreducible = false);

  int degree() const { return n_; }
  const std::vector<Int>& poly() const { return f_; }
  const IrredCertificate& certificate() const { return cert_; }

  FieldElem zero() const { return FieldElem{std::vector<Rat>(static_cast<size_t>(n_))}; }
  FieldElem one() const {
    FieldElem e = zero();
    e.c[0] = 1;
    return e;
  }
  // alpha^k for 0 <= k <= 2n-2
  FieldElem alpha_power(int k) const {
    FieldElem e = zero();
    for (int j = 0; j < n_; ++j) e.c[static_cast<size_t>(j)] = pow_table_(k, j);
    return e;
  }
  FieldElem from_ints(const std::vector<Int>& v) const {
    FieldElem e = zero();
    for (int j = 0; j < n_ && j < static_cast<int>(v.size()); ++j)
      e.c[static_cast<size_t>(j)] = v[static_cast<size_t>(j)];
    return e;
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<Rat> conv(static_cast<size_t>(2 * n_ - 1));
    for (int i = 0; i < n_; ++i) {
      if (a.c[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < n_; ++j)
        conv[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    }
    FieldElem out = zero();
    for (int k = 0; k < 2 * n_ - 1; ++k) {
      if (conv[static_cast<size_t>(k)] == 0) continue;
      for (int j = 0; j < n_; ++j)
        out.c[static_cast<size_t>(j)] += conv[static_cast<size_t>(k)] * pow_table_(k, j);
    }
    return out;
  }

  // convolution + reduction for integer coordinate rows; stays integral
  std::vector<Int> mul_int_rows(const std::vector<Int>& a, const std::vector<Int>& b) const {
    std::vector<Int> conv(static_cast<size_t>(2 * n_ - 1));
    for (int i = 0; i < n_; ++i) {
      if (a[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < n_; ++j)
        conv[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
    std::vector<Int> out(static_cast<size_t>(n_));
    for (int k = 0; k < 2 * n_ - 1; ++k) {
      if (conv[static_cast<size_t>(k)] == 0) continue;
      for (int j = 0; j < n_; ++j)
        out[static_cast<size_t>(j)] += conv[static_cast<size_t>(k)] * pow_table_(k, j);
    }
    return out;
  }

  // multiplication-by-a matrix on integer coordinates: row i = coords of
  // a * alpha^i
  IntMat mult_matrix_int(const std::vector<Int>& a) const {
    IntMat m(n_, n_);
    std::vector<Int> cur = a;
    m.set_row(0, cur);
    for (int i = 1; i < n_; ++i) {
      cur = shift_reduce(cur);
      m.set_row(i, cur);
    }
    return m;
  }

  Int trace_int(const std::vector<Int>& a) const {
    IntMat m = mult_matrix_int(a);
    Int t = 0;
    for (int i = 0; i < n_; ++i) t += m(i, i);
    return t;
  }

  Rat trace(const FieldElem& a) const {
    Int d = elem_den(a);
    return Rat(trace_int(elem_num_row(a, d)), d);
  }

  FieldElem inv(const FieldElem& a) const;

  bool operator==(const NumberField& o) const { return f_ == o.f_; }

  std::string poly_str() const {
    std::string s;
    for (size_t i = 0; i < f_.size(); ++i) s += (i ? "," : "") + f_[i].str();
    return s;
  }

 private:
  NumberField() = default;

  // coords of alpha * (element with integer coords a)
  std::vector<Int> shift_reduce(const std::vector<Int>& a) const {
    std::vector<Int> out(static_cast<size_t>(n_));
    for (int j = 1; j < n_; ++j) out[static_cast<size_t>(j)] = a[static_cast<size_t>(j - 1)];
    const Int& top = a[static_cast<size_t>(n_ - 1)];
    if (top != 0)
      for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] -= top * f_[static_cast<size_t>(j)];
    return out;
  }

  std::vector<Int> f_;
  int n_ = 0;
  IntMat pow_table_;  // (2n-1) x n, integer coords of alpha^k
  IrredCertificate cert_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

namespace detail {

// rational polynomial helpers for the extended Euclid in inv()
using RatPoly = std::vector<Rat>;

inline void rp_trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly rp_sub_scaled(const RatPoly& a, const RatPoly& b, const Rat& s, size_t shift) {
  RatPoly out = a;
  if (out.size() < b.size() + shift) out.resize(b.size() + shift);
  for (size_t i = 0; i < b.size(); ++i) out[i + shift] -= s * b[i];
  rp_trim(out);
  return out;
}

inline void rp_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  r = a;
  rp_trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
  while (r.size() >= b.size() && !r.empty()) {
    Rat f = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = f;
    r = rp_sub_scaled(r, b, f, shift);
    if (!r.empty() && r.size() >= b.size() && r.back() == 0) rp_trim(r);
  }
  rp_trim(q);
}

}  // namespace detail

inline FieldElem NumberField::inv(const FieldElem& a) const {
  if (a.is_zero()) fail(errc::division_by_zero, "inverse of zero field element");
  using detail::RatPoly;
  RatPoly r0(f_.size());
  for (size_t i = 0; i < f_.size(); ++i) r0[i] = Rat(f_[i], 1);
  RatPoly r1(a.c.begin(), a.c.end());
  detail::rp_trim(r1);
  RatPoly s0{Rat(0)}, s1{Rat(1)};  // coefficients of the a-lift in the Bezout identity
  detail::rp_trim(s0);
  while (true) {
    RatPoly q, r2;
    detail::rp_divmod(r0, r1, q, r2);
    if (r2.empty()) break;
    // s2 = s0 - q * s1
    RatPoly s2 = s0;
    for (size_t i = 0; i < q.size(); ++i)
      if (q[i] != 0) s2 = detail::rp_sub_scaled(s2, s1, q[i], i);
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  // r1 is the gcd: a nonzero constant since f is irreducible and a != 0
  if (r1.size() != 1)
    fail(errc::validation_error, "gcd(lift, f) non-constant; f is not irreducible");
  Rat g = r1[0];
  FieldElem out = zero();
  for (size_t i = 0; i < s1.size() && i < out.c.size(); ++i) out.c[i] = s1[i] / g;
  return out;
}

namespace detail {

// All integer roots of a monic integer polynomial (rational root theorem).
// Returns nullopt if the constant term cannot be fully factored.
inline std::optional<std::vector<Int>> integer_roots(const std::vector<Int>& f) {
  std::vector<Int> roots;
  Int c0 = f.front();
  auto eval = [&](const Int& x) {
    Int v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    return v;
  };
  if (c0 == 0) {
    roots.push_back(0);
    return roots;
  }
  Factorization fact = factor_integer(c0);
  if (!fact.complete()) return std::nullopt;
  // enumerate divisors of |c0|
  std::vector<Int> divisors{Int(1)};
  for (const auto& [p, e] : fact.factors) {
    std::vector<Int> next;
    Int pk = 1;
    for (int k = 0; k <= e; ++k) {
      for (const Int& d : divisors) next.push_back(d * pk);
      pk *= p;
    }
    divisors = std::move(next);
  }
  std::sort(divisors.begin(), divisors.end());
  for (const Int& d : divisors) {
    if (eval(d) == 0) roots.push_back(d);
    if (eval(-d) == 0) roots.push_back(-d);
  }
  return roots;
}

// Monic quadratic divisor of a monic quartic, by exact divisor enumeration of
// the constant term. Returns {a, b} with x^2 + a x + b | f, if one exists.
inline std::optional<std::pair<Int, Int>> quartic_quadratic_divisor(const std::vector<Int>& f) {
  const Int &e0 = f[0], &e1 = f[1], &e2 = f[2], &e3 = f[3];
  if (e0 == 0) return std::nullopt;  // handled by the root check
  Factorization fact = factor_integer(e0);
  if (!fact.complete()) return std::nullopt;
  std::vector<Int> divisors{Int(1)};
  for (const auto& [p, e] : fact.factors) {
    std::vector<Int> next;
    Int pk = 1;
    for (int k = 0; k <= e; ++k) {
      for (const Int& d : divisors) next.push_back(d * pk);
      pk *= p;
    }
    divisors = std::move(next);
  }
  std::sort(divisors.begin(), divisors.end());
  for (const Int& b_abs : divisors) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      Int b = sgn ? -b_abs : b_abs;
      Int d = e0 / b;
      // a + c = e3, a c = e2 - b - d, a d + b c = e1
      Int prod = e2 - b - d;
      Int disc = e3 * e3 - 4 * prod;
      if (disc < 0 || !is_perfect_square(disc)) continue;
      Int s = boost::multiprecision::sqrt(disc);
      for (int sign = 0; sign < 2; ++sign) {
        Int num = sign ? Int(e3 - s) : Int(e3 + s);
        if (num % 2 != 0) continue;
        Int a = num / 2;
        Int c = e3 - a;
        if (a * d + b * c == e1) return std::make_pair(a, b);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::shared_ptr<const NumberField> NumberField::create(const std::vector<Int>& f,
                                                              bool assume_irreducible) {
  if (f.size() < 2 || f.back() != 1) fail(errc::not_monic, "polynomial must be monic");
  int n = static_cast<int>(f.size()) - 1;
  if (n < 2) fail(errc::validation_error, "degree must be >= 2");

  IrredCertificate cert;
  bool certified = false;
  for (const Int& p : primes_up_to(1000)) {
    if (fp_irreducible(fp_poly(p, f))) {
      cert = IrredCertificate{"irreducible_mod_p", p, false};
      certified = true;
      break;
    }
  }
  if (!certified) {
    auto roots = detail::integer_roots(f);
    if (roots && !roots->empty()) {
      Int r = roots->front();
      fail(errc::reducible, "rational root " + r.str() + " gives factor (x - " + r.str() + ")");
    }
    if (n <= 3 && roots) {
      // monic degree <= 3 with no integer root is irreducible over Q
      cert = IrredCertificate{"exclusion_search", 0, false};
      certified = true;
    } else if (n == 4 && roots) {
      auto quad = detail::quartic_quadratic_divisor(f);
      if (quad)
        fail(errc::reducible, "quadratic factor x^2 + (" + quad->first.str() + ")x + (" +
                                  quad->second.str() + ")");
      cert = IrredCertificate{"exclusion_search", 0, false};
      certified = true;
    }
  }
  if (!certified) {
    if (!assume_irreducible)
      fail(errc::cannot_certify, "no irreducibility certificate found; pass assume_irreducible");
    cert = IrredCertificate{"assumed", 0, true};
  }

  auto k = std::shared_ptr<NumberField>(new NumberField());
  k->f_ = f;
  k->n_ = n;
  k->cert_ = cert;
  k->pow_table_ = IntMat(2 * n - 1, n);
  std::vector<Int> cur(static_cast<size_t>(n));
  cur[0] = 1;
  k->pow_table_.set_row(0, cur);
  for (int i = 1; i < 2 * n - 1; ++i) {
    // shift and reduce by f
    std::vector<Int> next(static_cast<size_t>(n));
    for (int j = 1; j < n; ++j) next[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)];
    const Int& top = cur[static_cast<size_t>(n - 1)];
    if (top != 0)
      for (int j = 0; j < n; ++j) next[static_cast<size_t>(j)] -= top * f[static_cast<size_t>(j)];
    k->pow_table_.set_row(i, next);
    cur = next;
  }
  return k;
}

}  // namespace normring
