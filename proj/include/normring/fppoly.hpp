#pragma once

// Univariate polynomial arithmetic over F_p. Coefficient lists are stored
// constant-term first with entries reduced into [0, p). Degrees stay tiny
// (at most the field degree), so all algorithms are the plain ones.

#include <vector>

#include "normring/integers.hpp"

namespace normring {

struct FpPoly {
  Int p;
  std::vector<Int> c;  // c[0] + c[1] x + ...

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& lead() const { return c.back(); }
};

inline FpPoly fp_poly(const Int& p, std::vector<Int> coeffs) {
  for (Int& v : coeffs) v = mod_reduce(v, p);
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return FpPoly{p, std::move(coeffs)};
}

inline FpPoly fp_x(const Int& p) { return fp_poly(p, {Int(0), Int(1)}); }

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  std::vector<Int> c(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    Int v = 0;
    if (i < a.c.size()) v += a.c[i];
    if (i < b.c.size()) v += b.c[i];
    c[i] = v;
  }
  return fp_poly(a.p, std::move(c));
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  std::vector<Int> c(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    Int v = 0;
    if (i < a.c.size()) v += a.c[i];
    if (i < b.c.size()) v -= b.c[i];
    c[i] = v;
  }
  return fp_poly(a.p, std::move(c));
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly{a.p, {}};
  std::vector<Int> c(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return fp_poly(a.p, std::move(c));
}

// division with remainder; divisor must be nonzero
inline void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  const Int& p = a.p;
  std::vector<Int> rem = a.c;
  int db = b.degree();
  Int lead_inv = inv_mod(b.lead(), p);
  std::vector<Int> quot;
  if (static_cast<int>(rem.size()) - 1 >= db)
    quot.assign(rem.size() - static_cast<size_t>(db), Int(0));
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    Int f = mod_reduce(rem[static_cast<size_t>(i)] * lead_inv, p);
    if (f == 0) continue;
    quot[static_cast<size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(i - db + j)] =
          mod_reduce(rem[static_cast<size_t>(i - db + j)] - f * b.c[static_cast<size_t>(j)], p);
  }
  q = fp_poly(p, std::move(quot));
  r = fp_poly(p, std::move(rem));
}

inline FpPoly fp_mod(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  fp_divmod(a, b, q, r);
  return r;
}

inline FpPoly fp_monic(const FpPoly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  Int inv = inv_mod(a.lead(), a.p);
  std::vector<Int> c = a.c;
  for (Int& v : c) v = mod_reduce(v * inv, a.p);
  return FpPoly{a.p, std::move(c)};
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = fp_mod(a, b);
    a = b;
    b = r;
  }
  return fp_monic(a);
}

// g = gcd(a, b) monic with u*a + v*b == g.
inline FpPoly fp_xgcd(const FpPoly& a, const FpPoly& b, FpPoly& u, FpPoly& v) {
  const Int& p = a.p;
  FpPoly r0 = a, r1 = b;
  FpPoly u0 = fp_poly(p, {Int(1)}), u1 = fp_poly(p, {});
  FpPoly v0 = fp_poly(p, {}), v1 = fp_poly(p, {Int(1)});
  while (!r1.is_zero()) {
    FpPoly q, r2;
    fp_divmod(r0, r1, q, r2);
    FpPoly u2 = fp_sub(u0, fp_mul(q, u1));
    FpPoly v2 = fp_sub(v0, fp_mul(q, v1));
    r0 = r1; r1 = r2;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  if (!r0.is_zero() && r0.lead() != 1) {
    Int inv = inv_mod(r0.lead(), p);
    FpPoly c = fp_poly(p, {inv});
    r0 = fp_mul(r0, c);
    u0 = fp_mul(u0, c);
    v0 = fp_mul(v0, c);
  }
  u = u0;
  v = v0;
  return r0;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f) {
  return fp_mod(fp_mul(a, b), f);
}

inline FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& f) {
  FpPoly result = fp_poly(f.p, {Int(1)});
  base = fp_mod(base, f);
  while (e > 0) {
    if (e % 2 == 1) result = fp_mulmod(result, base, f);
    base = fp_mulmod(base, base, f);
    e /= 2;
  }
  return result;
}

inline FpPoly fp_derivative(const FpPoly& a) {
  if (a.degree() < 1) return FpPoly{a.p, {}};
  std::vector<Int> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = Int(i) * a.c[i];
  return fp_poly(a.p, std::move(c));
}

// f (monic, deg n >= 1) irreducible over F_p: x^{p^n} == x mod f and
// gcd(x^{p^{n/q}} - x, f) == 1 for every prime q | n.
inline bool fp_irreducible(const FpPoly& f) {
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Int& p = f.p;
  FpPoly x = fp_x(p);
  FpPoly xq = fp_powmod(x, pow(p, static_cast<unsigned>(n)), f);
  if (!(fp_sub(xq, x).is_zero())) return false;
  int m = n;
  for (int q = 2; q * q <= m || q <= m; ++q) {
    if (n % q != 0) continue;
    while (m % q == 0) m /= q;
    FpPoly xr = fp_powmod(x, pow(p, static_cast<unsigned>(n / q)), f);
    if (fp_gcd(fp_sub(xr, x), f).degree() != 0) return false;
    if (m == 1) break;
  }
  return true;
}

namespace detail {

// equal-degree splitting (Cantor-Zassenhaus): f monic squarefree, all
// irreducible factors of degree d, deg f > d.
inline void fp_edf(const FpPoly& f, int d, SplitMix64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const Int& p = f.p;
  while (true) {
    // deterministic pseudo-random polynomial of degree < deg f
    std::vector<Int> rc(static_cast<size_t>(f.degree()));
    for (Int& v : rc) v = Int(rng.next() % 1000003) % p;
    FpPoly a = fp_poly(p, std::move(rc));
    if (a.degree() < 1) continue;
    FpPoly g = fp_gcd(a, f);
    if (g.degree() == 0) {
      if (p == 2) {
        // trace map over F_{2^d}
        FpPoly t = fp_mod(a, f);
        FpPoly acc = t;
        for (int i = 1; i < d; ++i) {
          t = fp_mulmod(t, t, f);
          acc = fp_add(acc, t);
        }
        g = fp_gcd(acc, f);
      } else {
        Int e = (pow(p, static_cast<unsigned>(d)) - 1) / 2;
        FpPoly b = fp_powmod(a, e, f);
        g = fp_gcd(fp_sub(b, fp_poly(p, {Int(1)})), f);
      }
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      FpPoly q, r;
      fp_divmod(f, g, q, r);
      fp_edf(g, d, rng, out);
      fp_edf(fp_monic(q), d, rng, out);
      return;
    }
  }
}

// distinct irreducible factors of a monic squarefree f
inline void fp_factor_squarefree(FpPoly f, SplitMix64& rng, std::vector<FpPoly>& out) {
  const Int& p = f.p;
  FpPoly x = fp_x(p);
  FpPoly h = x;
  int d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.push_back(f);
      return;
    }
    h = fp_powmod(h, p, f);
    FpPoly g = fp_gcd(fp_sub(h, x), f);
    if (g.degree() > 0) {
      fp_edf(g, d, rng, out);
      FpPoly q, r;
      fp_divmod(f, g, q, r);
      f = fp_monic(q);
      h = fp_mod(h, f);
    }
  }
}

}  // namespace detail

// Distinct monic irreducible factors with multiplicities; deterministic for a
// fixed seed.
inline std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f_in,
                                                     std::uint64_t seed = 0x5eedf00dULL) {
  FpPoly f = fp_monic(f_in);
  if (f.degree() < 1) fail(errc::validation_error, "factoring a constant polynomial");
  const Int& p = f.p;
  SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<FpPoly, int>> result;
  auto record = [&](const FpPoly& g, int mult) {
    for (auto& [h, m] : result)
      if (h.c == g.c) {
        m += mult;
        return;
      }
    result.emplace_back(g, mult);
  };
  // squarefree decomposition, char-p aware
  struct Item {
    FpPoly poly;
    int mult;
  };
  std::vector<Item> work{{f, 1}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.poly.degree() < 1) continue;
    FpPoly d = fp_derivative(it.poly);
    if (d.is_zero()) {
      // g(x^p) == (g-hat(x))^p over F_p: contract exponents by p
      std::vector<Int> contracted;
      for (size_t i = 0; i < it.poly.c.size(); i += static_cast<size_t>(p))
        contracted.push_back(it.poly.c[i]);
      work.push_back({fp_poly(p, std::move(contracted)),
                      it.mult * static_cast<int>(p)});
      continue;
    }
    FpPoly g = fp_gcd(it.poly, d);
    if (g.degree() == 0) {
      std::vector<FpPoly> irr;
      detail::fp_factor_squarefree(it.poly, rng, irr);
      for (const FpPoly& h : irr) record(h, it.mult);
      continue;
    }
    FpPoly q, r;
    fp_divmod(it.poly, g, q, r);
    std::vector<FpPoly> irr;
    detail::fp_factor_squarefree(fp_monic(q), rng, irr);
    for (const FpPoly& h : irr) {
      // full multiplicity of h inside it.poly
      FpPoly rest = it.poly;
      int m = 0;
      while (true) {
        FpPoly q2, r2;
        fp_divmod(rest, h, q2, r2);
        if (!r2.is_zero()) break;
        rest = q2;
        ++m;
      }
      record(h, m * it.mult);
      FpPoly gq = g;
      for (int k = 1; k < m; ++k) {
        FpPoly q3, r3;
        fp_divmod(gq, h, q3, r3);
        gq = q3;
      }
      g = gq;
    }
    if (g.degree() > 0) work.push_back({fp_monic(g), it.mult});
  }
  // deterministic order: by degree then coefficients
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.c < b.first.c;
  });
  return result;
}

}  // namespace normring
