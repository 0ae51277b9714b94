#pragma once

// Exact integer and rational scalars plus the small number-theoretic helpers
// (gcd chains, primality certification, trial-division factorization,
// deterministic sampling) shared by the whole library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "normring/errors.hpp"

namespace normring {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::pow;

inline Int rat_num(const Rat& q) { return Int(numerator(q)); }
inline Int rat_den(const Rat& q) { return Int(denominator(q)); }

// Floor division for b > 0 (cpp_int's operator/ truncates toward zero).
inline Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Int mod_reduce(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r;
}

// Extended gcd: returns g = gcd(a, b) and (u, v) with u*a + v*b = g, g >= 0.
inline Int xgcd(const Int& a, const Int& b, Int& u, Int& v) {
  Int r0 = a, r1 = b;
  Int u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int u2 = u0 - q * u1;
    Int v2 = v0 - q * v1;
    r0 = r1; r1 = r2;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  if (r0 < 0) { r0 = -r0; u0 = -u0; v0 = -v0; }
  u = u0; v = v0;
  return r0;
}

inline Int inv_mod(const Int& a, const Int& p) {
  Int u, v;
  Int g = xgcd(mod_reduce(a, p), p, u, v);
  if (g != 1) fail(errc::division_by_zero, "element not invertible mod " + p.str());
  return mod_reduce(u, p);
}

inline Int pow_mod(Int base, Int exp, const Int& m) {
  return boost::multiprecision::powm(base, exp, m);
}

// Exact integer logarithm: e with base^e == value, if it exists.
inline std::optional<int> exact_log(const Int& base, const Int& value) {
  if (base < 2 || value < 1) return std::nullopt;
  Int v = value;
  int e = 0;
  while (v > 1) {
    if (v % base != 0) return std::nullopt;
    v /= base;
    ++e;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Primality certification.
// Below 2^64: Miller-Rabin with the fixed base set {2,...,37}, which is
// deterministic on that range. Beyond: trial division by small primes plus
// Baillie-PSW (strong base-2 Miller-Rabin + strong Lucas-Selfridge).
// ---------------------------------------------------------------------------

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int s) {
  Int x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

inline int jacobi_symbol(Int a, Int n) {
  // n odd positive
  a = mod_reduce(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
inline bool strong_lucas_prp(const Int& n) {
  Int d_param = 5;
  while (true) {
    int j = jacobi_symbol(d_param, n);
    if (j == -1) break;
    if (j == 0 && abs(d_param) != n) return false;
    d_param = d_param > 0 ? Int(-(d_param + 2)) : Int(-(d_param - 2));
  }
  Int p_param = 1;
  Rat q_r(Int(1) - d_param, 4);
  Int q_param = rat_num(q_r);  // (1 - D)/4, exact

  Int delta = n + 1;
  Int d = delta;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }

  // Lucas sequences by binary ladder: U_k, V_k, Q^k.
  Int u = 0, v = 2, qk = 1;
  Int u1 = 1, v1 = p_param, q1 = q_param;
  Int bits = d;
  std::vector<bool> bv;
  while (bits > 0) { bv.push_back((bits & 1) != 0); bits >>= 1; }
  for (auto it = bv.rbegin(); it != bv.rend(); ++it) {
    // double: (u,v,qk) -> index 2k
    Int u2 = mod_reduce(u * v, n);
    Int v2 = mod_reduce(v * v - 2 * qk, n);
    Int q2 = mod_reduce(qk * qk, n);
    u = u2; v = v2; qk = q2;
    if (*it) {
      // add one: index 2k+1
      Int un = mod_reduce(u * v1 + u1 * v, n);
      if (un % 2 != 0) un += n;
      un = mod_reduce(un / 2, n);
      Int vn = mod_reduce(v * v1 + mod_reduce(d_param, n) * u * u1, n);
      if (vn % 2 != 0) vn += n;
      vn = mod_reduce(vn / 2, n);
      qk = mod_reduce(qk * q1, n);
      u = un; v = vn;
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = mod_reduce(v * v - 2 * qk, n);
    if (v == 0) return true;
    qk = mod_reduce(qk * qk, n);
  }
  return false;
}

inline bool is_prime_certified(const Int& n) {
  if (n < 2) return false;
  static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int p : small_primes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  if (n >> 64 == 0) {
    for (int p : small_primes)
      if (miller_rabin_witness(n, Int(p), d, s)) return false;
    return true;
  }
  if (is_perfect_square(n)) return false;
  if (miller_rabin_witness(n, Int(2), d, s)) return false;
  return strong_lucas_prp(n);
}

// ---------------------------------------------------------------------------
// Trial-division factorization with certified cofactor handling.
// ---------------------------------------------------------------------------

struct Factorization {
  Int value;                              // the factored integer (may be negative)
  std::vector<std::pair<Int, int>> factors;  // certified primes, ascending
  Int cofactor = 1;                       // +-1 when complete, else the uncertified remainder
  bool complete() const { return cofactor == 1 || cofactor == -1; }
};

inline Factorization factor_integer(const Int& value, const Int& trial_bound = Int(1000000)) {
  Factorization out;
  out.value = value;
  Int m = abs(value);
  if (m == 0) fail(errc::validation_error, "cannot factor zero");
  auto strip = [&](const Int& d) {
    int e = 0;
    while (m % d == 0) { m /= d; ++e; }
    if (e > 0) out.factors.emplace_back(d, e);
  };
  strip(2);
  strip(3);
  for (Int d = 5; d <= trial_bound && d * d <= m; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (m > 1) {
    if (is_prime_certified(m))
      out.factors.emplace_back(m, 1);
    else
      out.cofactor = m;
  }
  if (out.cofactor == 1 && value < 0) out.cofactor = -1;
  else if (value < 0) out.cofactor = -out.cofactor;
  return out;
}

inline std::vector<Int> primes_up_to(long bound) {
  std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
  std::vector<Int> out;
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[static_cast<size_t>(i)]) continue;
    out.emplace_back(i);
    for (long j = i * i; j <= bound; j += i) sieve[static_cast<size_t>(j)] = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic sampling. splitmix64 gives the same stream on every platform,
// which the replayable-audit contract requires; per-trial streams are derived
// from (master seed, trial index).
// ---------------------------------------------------------------------------

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound), bound >= 1, by rejection
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % bound;
  }
  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

inline SplitMix64 trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  SplitMix64 mix(master_seed ^ (0x51d3f89fb8e2a741ULL + trial_index * 0x9e3779b97f4a7c15ULL));
  mix.next();
  return mix;
}

}  // namespace normring
