#pragma once

// (q;q)_inf, eta powers and quotients, E2/E4/E6, Delta, j and the level-one
// basis E4^{3n-1} E6 Delta^{s-n}. Every builder takes the target precision
// in 1/24 units (exclusive), like the rest of the library.

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

namespace detail {

/// prod (1 - q^{dn}) (cube = false) or its cube (cube = true) as sparse terms,
/// normalised to start at exponent 0, known below `precision`.
template <class Ring>
SparseSeries<Ring> eta_unit_sparse(const Ring& ring, std::int64_t d, std::int64_t precision, bool cube) {
  SparseSeries<Ring> s{ring, precision, {}};
  const std::int64_t step = kUnit * d;
  if (!cube) {
    // pentagonal exponents k(3k-1)/2 for k = 0, 1, -1, 2, -2, ...
    for (std::int64_t k = 0;; ++k) {
      bool any = false;
      for (int side = 0; side < (k == 0 ? 1 : 2); ++side) {
        const std::int64_t kk = side ? -k : k;
        const std::int64_t e = step * (kk * (3 * kk - 1) / 2);
        if (e >= precision) continue;
        any = true;
        s.terms.emplace_back(e, ring.from_int(k % 2 ? -1 : 1));
      }
      if (!any) break;
    }
  } else {
    // sum (-1)^k (2k+1) q^{k(k+1)/2}
    for (std::int64_t k = 0;; ++k) {
      const std::int64_t e = step * (k * (k + 1) / 2);
      if (e >= precision) break;
      s.terms.emplace_back(e, ring.from_int(k % 2 ? -(2 * k + 1) : 2 * k + 1));
    }
  }
  std::sort(s.terms.begin(), s.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::erase_if(s.terms, [&](const auto& t) { return ring.is_zero(t.second); });
  return s;
}

}  // namespace detail

/// (q^d; q^d)_inf.
template <class Ring>
QSeries<Ring> euler_product(std::int64_t precision, const Ring& ring, std::int64_t d = 1) {
  if (d < 1) throw std::invalid_argument("euler_product multiplier must be positive");
  if (precision <= 0) return QSeries<Ring>::zero(ring, precision);
  return detail::eta_unit_sparse(ring, d, precision, false).to_dense();
}

enum class EtaMethod { automatic, sparse_chain, square_multiply };

namespace detail {

/// (q^d;q^d)_inf^r normalised to start at exponent 0, known below `rel`.
template <class Ring>
QSeries<Ring> eta_unit_power(const Ring& ring, std::int64_t d, std::int64_t r, std::int64_t rel, EtaMethod method) {
  auto acc = QSeries<Ring>::one(ring, rel);
  if (r == 0 || rel <= 0) return acc;
  const auto u1 = eta_unit_sparse(ring, d, rel, false);
  const auto u3 = eta_unit_sparse(ring, d, rel, true);
  const std::int64_t a = r < 0 ? -r : r;
  if (method == EtaMethod::automatic) {
    if (r < 0) {
      method = EtaMethod::sparse_chain;
    } else {
      const double slots = static_cast<double>(rel) / static_cast<double>(kUnit * d) + 1.0;
      const double chain = static_cast<double>(a / 3 + a % 3) * static_cast<double>(u3.terms.size()) * slots;
      double bits = 0;
      for (std::int64_t x = a; x; x >>= 1) bits += 1;
      const double dense = bits * slots * slots;
      method = chain <= dense ? EtaMethod::sparse_chain : EtaMethod::square_multiply;
    }
  }
  if (method == EtaMethod::square_multiply) return pow(u1.to_dense(), r);
  for (std::int64_t i = 0; i < a % 3; ++i) acc = r > 0 ? mul(acc, u1) : divide(acc, u1);
  for (std::int64_t i = 0; i < a / 3; ++i) acc = r > 0 ? mul(acc, u3) : divide(acc, u3);
  return acc;
}

}  // namespace detail

/// eta(d z)^r = q^{d r / 24} (q^d;q^d)^r.
template <class Ring>
QSeries<Ring> eta_power(std::int64_t d, std::int64_t r, std::int64_t precision, const Ring& ring,
                        EtaMethod method = EtaMethod::automatic) {
  if (d < 1) throw std::invalid_argument("eta multiplier must be positive");
  const std::int64_t lead = d * r;
  if (precision <= lead) return QSeries<Ring>::zero(ring, precision);
  return shift(detail::eta_unit_power(ring, d, r, precision - lead, method), lead);
}

/// prod eta(d z)^r over the factors.
struct EtaQuotient {
  std::vector<std::pair<std::int64_t, std::int64_t>> factors;  // (d, r), d >= 1, r != 0

  EtaQuotient() = default;
  EtaQuotient(std::initializer_list<std::pair<std::int64_t, std::int64_t>> fs) {
    for (const auto& f : fs) add(f.first, f.second);
  }

  void add(std::int64_t d, std::int64_t r) {
    if (d < 1) throw std::invalid_argument("eta quotient multiplier must be positive");
    for (auto& f : factors)
      if (f.first == d) {
        f.second += r;
        std::erase_if(factors, [](const auto& x) { return x.second == 0; });
        return;
      }
    if (r != 0) factors.emplace_back(d, r);
  }

  /// Leading exponent in 1/24 units.
  std::int64_t leading_exponent() const {
    std::int64_t e = 0;
    for (const auto& [d, r] : factors) e += d * r;
    return e;
  }
};

/// Multiplies the unit parts factor by factor through sparse eta / eta^3 steps,
/// dividing for negative exponents.
template <class Ring>
QSeries<Ring> eta_quotient(const EtaQuotient& q, std::int64_t precision, const Ring& ring) {
  const std::int64_t lead = q.leading_exponent();
  if (precision <= lead) return QSeries<Ring>::zero(ring, precision);
  const std::int64_t rel = precision - lead;
  auto acc = QSeries<Ring>::one(ring, rel);
  for (const auto& [d, r] : q.factors) {
    if (r > 0) acc = mul(acc, detail::eta_unit_power(ring, d, r, rel, EtaMethod::automatic));
  }
  for (const auto& [d, r] : q.factors) {
    if (r >= 0) continue;
    const auto u1 = detail::eta_unit_sparse(ring, d, rel, false);
    const auto u3 = detail::eta_unit_sparse(ring, d, rel, true);
    for (std::int64_t i = 0; i < (-r) % 3; ++i) acc = divide(acc, u1);
    for (std::int64_t i = 0; i < (-r) / 3; ++i) acc = divide(acc, u3);
  }
  return shift(acc, lead);
}

/// E_k(d z) for k in {2, 4, 6}.
template <class Ring>
QSeries<Ring> eisenstein(int k, std::int64_t precision, const Ring& ring, std::int64_t d = 1) {
  std::int64_t c;
  switch (k) {
    case 2: c = -24; break;
    case 4: c = 240; break;
    case 6: c = -504; break;
    default: throw std::invalid_argument("eisenstein weight must be 2, 4 or 6, got " + std::to_string(k));
  }
  if (d < 1) throw std::invalid_argument("eisenstein multiplier must be positive");
  const std::int64_t step = kUnit * d;
  if (precision <= 0) return QSeries<Ring>::zero(ring, precision);
  const std::int64_t nmax = (precision - 1) / step;
  std::vector<typename Ring::value_type> sigma(static_cast<std::size_t>(nmax + 1), ring.zero());
  for (std::int64_t t = 1; t <= nmax; ++t) {
    const auto tp = ring.pow_int(t, static_cast<std::uint64_t>(k - 1));
    for (std::int64_t m = t; m <= nmax; m += t) ring.add_in_place(sigma[static_cast<std::size_t>(m)], tp);
  }
  sigma[0] = ring.one();
  for (std::int64_t n = 1; n <= nmax; ++n) sigma[static_cast<std::size_t>(n)] = ring.mul_int(sigma[static_cast<std::size_t>(n)], c);
  return QSeries<Ring>(ring, 0, step, precision, std::move(sigma));
}

template <class Ring>
QSeries<Ring> delta(std::int64_t precision, const Ring& ring) {
  return eta_power(1, 24, precision, ring);
}

/// E4^3 / Delta = q^{-1} + 744 + ...
template <class Ring>
QSeries<Ring> j_invariant(std::int64_t precision, const Ring& ring) {
  const auto e4 = eisenstein(4, precision + kUnit, ring);
  return mul(pow(e4, 3), invert(delta(precision + 2 * kUnit, ring)));
}

/// Delta / E4^3 = 1/j = q - 744 q^2 + ...
template <class Ring>
QSeries<Ring> j_reciprocal(std::int64_t precision, const Ring& ring) {
  const auto e4 = eisenstein(4, precision - kUnit, ring);
  return mul(delta(precision, ring), invert(pow(e4, 3)));
}

/// E4^{3n-1} E6 Delta^{s-n}, 1 <= n <= s.
template <class Ring>
QSeries<Ring> basis_element(std::int64_t n, std::int64_t s, std::int64_t precision, const Ring& ring) {
  if (n < 1 || n > s)
    throw std::invalid_argument("basis index n=" + std::to_string(n) + " outside 1.." + std::to_string(s));
  const std::int64_t lead = kUnit * (s - n);
  if (precision <= lead) return QSeries<Ring>::zero(ring, precision);
  const std::int64_t rel = precision - lead;
  const auto e = mul(pow(eisenstein(4, rel, ring), 3 * n - 1), eisenstein(6, rel, ring));
  if (s == n) return e;
  return mul(e, eta_power(1, 24 * (s - n), precision, ring));
}

namespace detail {

inline std::int64_t parse_int(std::string_view text, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("bad integer '" + std::string(text) + "' in " + what);
  return v;
}

}  // namespace detail

/// Builds a series from its registry id:
///   eulerprod | eta:d^r | E2|E4|E6[:d] | delta | j | basis:n,s
template <class Ring>
QSeries<Ring> named_series(const std::string& id, std::int64_t precision, const Ring& ring) {
  if (id == "eulerprod") return euler_product(precision, ring);
  if (id == "delta") return delta(precision, ring);
  if (id == "j") return j_invariant(precision, ring);
  const auto colon = id.find(':');
  const std::string head = id.substr(0, colon);
  const std::string_view tail = colon == std::string::npos ? std::string_view{} : std::string_view(id).substr(colon + 1);
  if (head == "E2" || head == "E4" || head == "E6") {
    const std::int64_t d = colon == std::string::npos ? 1 : detail::parse_int(tail, id);
    return eisenstein(head[1] - '0', precision, ring, d);
  }
  if (head == "eta" && colon != std::string::npos) {
    const auto caret = tail.find('^');
    if (caret == std::string_view::npos) throw std::invalid_argument("eta id needs d^r: " + id);
    return eta_power(detail::parse_int(tail.substr(0, caret), id), detail::parse_int(tail.substr(caret + 1), id),
                     precision, ring);
  }
  if (head == "basis" && colon != std::string::npos) {
    const auto comma = tail.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("basis id needs n,s: " + id);
    return basis_element(detail::parse_int(tail.substr(0, comma), id), detail::parse_int(tail.substr(comma + 1), id),
                         precision, ring);
  }
  throw std::invalid_argument("unknown series id: " + id);
}

}  // namespace sptlab
