#pragma once

// p(n), spt(n), d(n) = (24n-1)p(n) and a(n) = 12 spt(n) + d(n), exactly or
// modulo m, plus an exhaustive spt oracle for small n.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sptlab/errors.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

/// Values indexed by n >= 0; arguments below zero read as 0.
template <class Ring>
struct CoeffTable {
  using value_type = typename Ring::value_type;

  Ring ring;
  std::vector<value_type> values;

  std::int64_t max_index() const { return static_cast<std::int64_t>(values.size()) - 1; }

  value_type at(std::int64_t n) const {
    if (n < 0) return ring.zero();
    if (n > max_index())
      throw table_too_short("table index " + std::to_string(n) + " beyond " + std::to_string(max_index()));
    return values[static_cast<std::size_t>(n)];
  }
};

template <class Ring>
using PartitionTable = CoeffTable<Ring>;

enum class SptMethod { automatic, enumerate, generating_function, rank_moment };

inline const char* to_string(SptMethod m) {
  switch (m) {
    case SptMethod::automatic: return "automatic";
    case SptMethod::enumerate: return "enumerate";
    case SptMethod::generating_function: return "generating-function";
    case SptMethod::rank_moment: return "rank-moment";
  }
  return "?";
}

template <class Ring>
struct SptTable : CoeffTable<Ring> {
  SptMethod method = SptMethod::automatic;
};

namespace detail {

/// Nonzero coefficients of (q;q)_inf up to q^n: (exponent, +-1).
inline std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t e1 = k * (3 * k - 1) / 2;
    const std::int64_t e2 = k * (3 * k + 1) / 2;
    if (e1 > n) break;
    const int sign = (k % 2) ? -1 : 1;
    out.emplace_back(e1, sign);
    if (e2 <= n) out.emplace_back(e2, sign);
  }
  return out;
}

/// Solves (q;q)_inf * y = rhs coefficientwise.
template <class Ring>
std::vector<typename Ring::value_type> divide_by_euler(const Ring& ring, std::vector<typename Ring::value_type> y) {
  const auto pent = pentagonal_terms(static_cast<std::int64_t>(y.size()) - 1);
  for (std::size_t n = 1; n < y.size(); ++n) {
    auto& acc = y[n];
    for (const auto& [e, sign] : pent) {
      if (static_cast<std::size_t>(e) > n) break;
      // y_n = rhs_n - sum_{e>=1} sign_e y_{n-e}
      if (sign > 0) ring.sub_in_place(acc, y[n - static_cast<std::size_t>(e)]);
      else ring.add_in_place(acc, y[n - static_cast<std::size_t>(e)]);
    }
  }
  return y;
}

inline std::vector<std::int64_t> divisor_sums(std::int64_t n) {
  std::vector<std::int64_t> sigma(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t d = 1; d <= n; ++d)
    for (std::int64_t m = d; m <= n; m += d) sigma[static_cast<std::size_t>(m)] += d;
  return sigma;
}

inline void spt_enumerate_rec(int remaining, int last, int last_count, std::int64_t& total) {
  if (remaining == 0) {
    total += last_count;
    return;
  }
  for (int part = std::min(remaining, last); part >= 1; --part)
    spt_enumerate_rec(remaining - part, part, part == last ? last_count + 1 : 1, total);
}

}  // namespace detail

/// p(0..N) by the pentagonal-number recurrence.
template <class Ring>
PartitionTable<Ring> partition_table(std::int64_t N, const Ring& ring) {
  if (N < 0) throw std::invalid_argument("partition_table needs N >= 0");
  std::vector<typename Ring::value_type> rhs(static_cast<std::size_t>(N + 1), ring.zero());
  rhs[0] = ring.one();
  return {ring, detail::divide_by_euler(ring, std::move(rhs))};
}

/// Smallest-part count of n by walking every partition of n. Oracle only: 1 <= n <= 60.
inline std::int64_t spt_enumerate(int n) {
  if (n < 1 || n > 60) throw std::out_of_range("spt_enumerate supports 1 <= n <= 60, got " + std::to_string(n));
  std::int64_t total = 0;
  for (int first = n; first >= 1; --first) detail::spt_enumerate_rec(n - first, first, 1, total);
  return total;
}

/// spt via sum_{n>=1} q^n / ((1-q^n)^2 (q^{n+1};q)_inf), O(N^2).
template <class Ring>
std::vector<typename Ring::value_type> spt_by_generating_function(std::int64_t N, const Ring& ring) {
  const auto len = static_cast<std::size_t>(N + 1);
  std::vector<typename Ring::value_type> total(len, ring.zero());
  std::vector<typename Ring::value_type> g(len, ring.zero());  // 1/(q^{n+1};q)_inf
  g[0] = ring.one();
  std::vector<typename Ring::value_type> h;
  for (std::int64_t n = N; n >= 1; --n) {
    const auto step = static_cast<std::size_t>(n);
    // g <- g / (1 - q^n)
    for (std::size_t i = step; i < len; ++i) ring.add_in_place(g[i], g[i - step]);
    // h = g / (1 - q^n), needed through degree N - n
    const std::size_t hl = len - step;
    h.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(hl));
    for (std::size_t i = step; i < hl; ++i) ring.add_in_place(h[i], h[i - step]);
    for (std::size_t i = 0; i < hl; ++i) ring.add_in_place(total[i + step], h[i]);
  }
  return total;
}

/// spt via n p(n) - N2(n)/2 written as
///   (1/(q;q)) [ sum sigma(m) q^m + sum_{n>=1} (-1)^n q^{n(3n+1)/2} (1+q^n)/(1-q^n)^2 ],
/// which needs no division by 2. O(N^1.5).
template <class Ring>
std::vector<typename Ring::value_type> spt_by_rank_moment(std::int64_t N, const Ring& ring) {
  const auto sigma = detail::divisor_sums(N);
  std::vector<std::int64_t> bracket(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t m = 1; m <= N; ++m) bracket[static_cast<std::size_t>(m)] = sigma[static_cast<std::size_t>(m)];
  for (std::int64_t n = 1; n * (3 * n + 1) / 2 <= N; ++n) {
    const std::int64_t sign = (n % 2) ? -1 : 1;
    std::int64_t k = 0;
    for (std::int64_t e = n * (3 * n + 1) / 2; e <= N; e += n, ++k)
      bracket[static_cast<std::size_t>(e)] += sign * (2 * k + 1);
  }
  std::vector<typename Ring::value_type> rhs;
  rhs.reserve(bracket.size());
  for (const auto b : bracket) rhs.push_back(ring.from_int(b));
  return detail::divide_by_euler(ring, std::move(rhs));
}

/// Generating-function expansion is used up to this size in automatic mode.
inline constexpr std::int64_t kSptQuadraticLimit = 5000;

/// spt(0..N); spt(0) = 0 by convention.
template <class Ring>
SptTable<Ring> spt_table(std::int64_t N, const Ring& ring, SptMethod method = SptMethod::automatic) {
  if (N < 1) throw std::invalid_argument("spt_table needs N >= 1");
  if (method == SptMethod::automatic)
    method = N <= kSptQuadraticLimit ? SptMethod::generating_function : SptMethod::rank_moment;
  std::vector<typename Ring::value_type> values;
  switch (method) {
    case SptMethod::enumerate: {
      values.assign(static_cast<std::size_t>(N + 1), ring.zero());
      for (std::int64_t n = 1; n <= N; ++n)
        values[static_cast<std::size_t>(n)] = ring.from_int(spt_enumerate(static_cast<int>(n)));
      break;
    }
    case SptMethod::generating_function:
      values = spt_by_generating_function(N, ring);
      break;
    default:
      values = spt_by_rank_moment(N, ring);
      break;
  }
  return SptTable<Ring>{{ring, std::move(values)}, method};
}

template <class Ring>
struct MockTables {
  CoeffTable<Ring> d;  // (24n - 1) p(n)
  CoeffTable<Ring> a;  // 12 spt(n) + d(n)
};

template <class Ring>
MockTables<Ring> mock_tables(const PartitionTable<Ring>& p, const SptTable<Ring>& spt) {
  const Ring& ring = p.ring;
  const std::int64_t N = std::min(p.max_index(), spt.max_index());
  MockTables<Ring> out{{ring, {}}, {ring, {}}};
  out.d.values.reserve(static_cast<std::size_t>(N + 1));
  out.a.values.reserve(static_cast<std::size_t>(N + 1));
  for (std::int64_t n = 0; n <= N; ++n) {
    auto d = ring.mul_int(p.at(n), 24 * n - 1);
    out.a.values.push_back(ring.add(ring.mul_int(spt.at(n), 12), d));
    out.d.values.push_back(std::move(d));
  }
  return out;
}

template <class Ring>
MockTables<Ring> mock_tables(std::int64_t N, const Ring& ring) {
  return mock_tables(partition_table(N, ring), spt_table(std::max<std::int64_t>(N, 1), ring));
}

enum class NamedTableSeries { spt, alpha, d_series };

/// SPT(z) = sum spt(n) q^{n-1/24}, alpha(z) = sum a(n) q^{n-1/24}, or sum d(n) q^{n-1/24}, through n = N.
template <class Ring>
QSeries<Ring> build_series(NamedTableSeries which, std::int64_t N, const Ring& ring) {
  const std::int64_t precision = kUnit * (N + 1) - 1;
  switch (which) {
    case NamedTableSeries::spt: {
      const auto t = spt_table(std::max<std::int64_t>(N, 1), ring);
      return QSeries<Ring>::generate(ring, kUnit - 1, kUnit, precision,
                                     [&](std::int64_t e) { return t.at((e + 1) / kUnit); });
    }
    case NamedTableSeries::alpha:
    case NamedTableSeries::d_series: {
      const auto m = mock_tables(N, ring);
      const auto& t = which == NamedTableSeries::alpha ? m.a : m.d;
      return QSeries<Ring>::generate(ring, -1, kUnit, precision, [&](std::int64_t e) { return t.at((e + 1) / kUnit); });
    }
  }
  throw std::invalid_argument("unknown table series");
}

}  // namespace sptlab
