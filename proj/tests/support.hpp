#pragma once

// Shared test helpers: a fixed-seed RNG and naive O(L^2) power-series
// arithmetic over mpz vectors, used as oracles independent of QSeries.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sptlab/sptlab.hpp"

namespace oracle {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed5eedULL);
  return g;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

/// Coefficients of q^0 .. q^{L-1}.
using Poly = std::vector<mpz_class>;

inline Poly mul(const Poly& a, const Poly& b) {
  const std::size_t L = std::min(a.size(), b.size());
  Poly c(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < L; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// 1/a for a[0] = +-1.
inline Poly inverse(const Poly& a) {
  if (a.empty() || (a[0] != 1 && a[0] != -1)) throw std::invalid_argument("oracle inverse needs a unit constant");
  Poly g(a.size(), 0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    mpz_class acc = n == 0 ? 1 : 0;
    for (std::size_t k = 1; k <= n; ++k) acc -= a[k] * g[n - k];
    g[n] = acc * a[0];
  }
  return g;
}

inline Poly power(const Poly& a, std::int64_t e) {
  Poly r(a.size(), 0);
  r[0] = 1;
  const Poly base = e < 0 ? inverse(a) : a;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r = mul(r, base);
  return r;
}

/// prod_{n >= 1} (1 - q^n) multiplied out factor by factor.
inline Poly euler(std::size_t L) {
  Poly r(L, 0);
  r[0] = 1;
  for (std::size_t n = 1; n < L; ++n)
    for (std::size_t i = L; i-- > n;) r[i] -= r[i - n];
  return r;
}

/// 1 + c sum sigma_{k-1}(n) q^n with sigma by trial division.
inline Poly eisenstein(int k, std::size_t L) {
  const long c = k == 2 ? -24 : k == 4 ? 240 : -504;
  Poly r(L, 0);
  r[0] = 1;
  for (std::size_t n = 1; n < L; ++n) {
    mpz_class s = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
        s += t;
      }
    r[n] = c * s;
  }
  return r;
}

/// Partition counts by the coin-change recurrence over part sizes.
inline Poly partitions(std::size_t L) {
  Poly p(L, 0);
  p[0] = 1;
  for (std::size_t part = 1; part < L; ++part)
    for (std::size_t n = part; n < L; ++n) p[n] += p[n - part];
  return p;
}

namespace detail {
inline void walk(int remaining, int max_part, int smallest, int count, long& total) {
  if (remaining == 0) {
    total += count;
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part)
    walk(remaining - part, part, part, part == smallest ? count + 1 : 1, total);
}
}  // namespace detail

/// Smallest parts summed over all partitions of n, by generating each partition.
inline long spt_brute(int n) {
  long total = 0;
  detail::walk(n, n, 0, 0, total);
  return total;
}

/// Dense integer-exponent coefficients of a QSeries, q^0 .. q^{L-1}.
template <class Ring>
Poly coefficients(const sptlab::QSeries<Ring>& f, std::size_t L) {
  Poly r;
  for (std::size_t n = 0; n < L; ++n) r.push_back(f.ring().to_integer(f.coeff_q(static_cast<std::int64_t>(n))));
  return r;
}

/// Random integer series with support on integral exponents, known below q^L.
inline sptlab::QSeries<sptlab::IntegerRing> random_series(std::size_t L, std::int64_t bound = 50) {
  const sptlab::IntegerRing Z;
  return sptlab::QSeries<sptlab::IntegerRing>::generate(Z, 0, sptlab::kUnit, sptlab::kUnit * static_cast<std::int64_t>(L),
                                                         [&](std::int64_t) { return mpz_class(uniform(-bound, bound)); });
}

}  // namespace oracle
