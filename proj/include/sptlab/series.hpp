#pragma once

// Truncated q-series graded in units of q^{1/24}.
//
// A series stores its coefficients densely on the lattice
//     min_exp + stride * i,   i = 0, 1, ...
// (exponents in 1/24 units). Exponents off the lattice have coefficient zero.
// Every exponent below `precision` is known; anything at or above it is not.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sptlab/errors.hpp"
#include "sptlab/ring.hpp"

namespace sptlab {

/// Exponent unit: one q-power is kUnit lattice steps.
inline constexpr std::int64_t kUnit = 24;

/// Precision (exclusive, 1/24 units) that makes every coefficient through q^n known.
constexpr std::int64_t through_q(std::int64_t n) { return kUnit * (n + 1); }

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::size_t lattice_count(std::int64_t min_exp, std::int64_t stride, std::int64_t precision) {
  if (precision <= min_exp) return 0;
  return static_cast<std::size_t>((precision - min_exp + stride - 1) / stride);
}

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

/// out[idx + step*j] += c * inner[j] for every (idx, c) in outer, while in range.
template <class Ring>
void convolve_into(const Ring& ring, std::vector<typename Ring::value_type>& out,
                   const std::vector<std::pair<std::size_t, typename Ring::value_type>>& outer,
                   std::span<const typename Ring::value_type> inner, std::size_t step) {
  const std::size_t len = out.size();
  for (const auto& [idx, c] : outer) {
    if (idx >= len) continue;
    const std::size_t n = std::min(inner.size(), (len - idx + step - 1) / step);
    for (std::size_t j = 0; j < n; ++j) {
      if (!ring.is_zero(inner[j])) ring.addmul(out[idx + step * j], c, inner[j]);
    }
  }
}

inline constexpr std::uint64_t kSmallModulusLimit = std::uint64_t{1} << 32;

/// Residue rings accumulate raw products in 64 bits and reduce lazily.
inline void convolve_into(const ResidueRing& ring, std::vector<std::uint64_t>& out,
                          const std::vector<std::pair<std::size_t, std::uint64_t>>& outer,
                          std::span<const std::uint64_t> inner, std::size_t step) {
  const std::uint64_t m = ring.modulus();
  if (m > kSmallModulusLimit) {
    convolve_into<ResidueRing>(ring, out, outer, inner, step);
    return;
  }
  const std::uint64_t sq = (m - 1) * (m - 1);
  const std::uint64_t budget =
      sq == 0 ? std::numeric_limits<std::uint64_t>::max() : (std::numeric_limits<std::uint64_t>::max() - m) / sq;
  const std::size_t len = out.size();
  std::uint64_t used = 0;
  auto reduce_all = [&] {
    for (auto& v : out) v %= m;
    used = 0;
  };
  for (const auto& [idx, c] : outer) {
    if (idx >= len || c == 0) continue;
    if (used >= budget) reduce_all();
    const std::size_t n = std::min(inner.size(), (len - idx + step - 1) / step);
    std::uint64_t* dst = out.data() + idx;
    const std::uint64_t* src = inner.data();
    if (step == 1) {
      for (std::size_t j = 0; j < n; ++j) dst[j] += c * src[j];
    } else {
      for (std::size_t j = 0; j < n; ++j) dst[step * j] += c * src[j];
    }
    ++used;
  }
  reduce_all();
}

}  // namespace detail

template <class Ring>
class QSeries {
 public:
  using ring_type = Ring;
  using value_type = typename Ring::value_type;

  QSeries(Ring ring, std::int64_t min_exp, std::int64_t stride, std::int64_t precision,
          std::vector<value_type> coeffs)
      : ring_(std::move(ring)),
        min_exp_(min_exp),
        stride_(stride),
        precision_(precision),
        coeffs_(std::move(coeffs)) {
    if (stride_ < 1) throw std::invalid_argument("series stride must be positive");
    if (min_exp_ > precision_) throw std::invalid_argument("series min_exp exceeds precision");
    if (coeffs_.size() != detail::lattice_count(min_exp_, stride_, precision_))
      throw std::invalid_argument("series coefficient count does not match its lattice");
  }

  /// The zero series known below `precision`.
  static QSeries zero(Ring ring, std::int64_t precision) {
    return QSeries(std::move(ring), precision, kUnit, precision, {});
  }

  /// c * q^{exp/24}, known below `precision`.
  static QSeries monomial(Ring ring, std::int64_t exp, value_type c, std::int64_t precision) {
    if (exp >= precision) return zero(std::move(ring), precision);
    const std::int64_t stride = precision - exp;
    std::vector<value_type> v(1, ring.zero());
    v[0] = std::move(c);
    return QSeries(std::move(ring), exp, stride, precision, std::move(v));
  }

  static QSeries one(Ring ring, std::int64_t precision) {
    auto c = ring.one();
    return monomial(std::move(ring), 0, std::move(c), precision);
  }

  /// Builds a series on the lattice (min_exp, stride) from a coefficient generator.
  template <class Fn>
  static QSeries generate(Ring ring, std::int64_t min_exp, std::int64_t stride, std::int64_t precision, Fn&& fn) {
    std::vector<value_type> v;
    const std::size_t n = detail::lattice_count(min_exp, stride, precision);
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(fn(min_exp + stride * static_cast<std::int64_t>(i)));
    return QSeries(std::move(ring), min_exp, stride, precision, std::move(v));
  }

  const Ring& ring() const { return ring_; }
  std::int64_t min_exp() const { return min_exp_; }
  std::int64_t stride() const { return stride_; }
  std::int64_t precision() const { return precision_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const value_type> coeffs() const { return coeffs_; }
  std::int64_t exponent_at(std::size_t i) const { return min_exp_ + stride_ * static_cast<std::int64_t>(i); }

  /// Stride that constrains products and sums: 0 when at most one lattice slot exists.
  std::int64_t effective_stride() const { return coeffs_.size() <= 1 ? 0 : stride_; }

  /// Coefficient of q^{e/24}. Throws when e is not below the precision.
  value_type coeff_at(std::int64_t e) const {
    if (e >= precision_)
      throw precision_error("coefficient at exponent " + std::to_string(e) + " is beyond precision " +
                            std::to_string(precision_));
    if (e < min_exp_ || (e - min_exp_) % stride_ != 0) return ring_.zero();
    return coeffs_[static_cast<std::size_t>((e - min_exp_) / stride_)];
  }

  /// Coefficient of the integral power q^n.
  value_type coeff_q(std::int64_t n) const { return coeff_at(kUnit * n); }

  /// Exponent of the first nonzero coefficient, if any.
  std::optional<std::int64_t> leading_exponent() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!ring_.is_zero(coeffs_[i])) return exponent_at(i);
    return std::nullopt;
  }

  bool is_zero() const { return !leading_exponent().has_value(); }

  /// True when every lattice exponent is a multiple of 24 (a plain power series in q).
  bool has_integral_exponents() const {
    if (coeffs_.empty()) return true;
    return min_exp_ % kUnit == 0 && (coeffs_.size() == 1 || stride_ % kUnit == 0);
  }

  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!ring_.is_zero(coeffs_[i])) fn(exponent_at(i), coeffs_[i]);
  }

  /// Drops coefficients at and above `precision`.
  QSeries truncated(std::int64_t precision) const {
    if (precision > precision_)
      throw precision_error("cannot raise precision from " + std::to_string(precision_) + " to " +
                            std::to_string(precision));
    const std::int64_t lo = std::min(min_exp_, precision);
    const std::size_t n = detail::lattice_count(lo, stride_, precision);
    std::vector<value_type> v(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n));
    return QSeries(ring_, lo, stride_, precision, std::move(v));
  }

  /// Re-expresses the series on the finer lattice (min_exp, stride).
  QSeries on_lattice(std::int64_t min_exp, std::int64_t stride) const {
    std::vector<value_type> v(detail::lattice_count(min_exp, stride, precision_), ring_.zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const std::int64_t e = exponent_at(i);
      if (e < min_exp || (e - min_exp) % stride != 0)
        throw std::invalid_argument("target lattice does not contain the series support");
      v[static_cast<std::size_t>((e - min_exp) / stride)] = coeffs_[i];
    }
    return QSeries(ring_, min_exp, stride, precision_, std::move(v));
  }

  /// Coarsest lattice holding the nonzero coefficients.
  QSeries compacted() const {
    std::optional<std::int64_t> first;
    std::int64_t g = 0;
    for_each_nonzero([&](std::int64_t e, const value_type&) {
      if (!first) first = e;
      else g = std::gcd(g, e - *first);
    });
    if (!first) return zero(ring_, precision_);
    if (g == 0) g = std::max<std::int64_t>(stride_, precision_ - *first);
    std::vector<value_type> v(detail::lattice_count(*first, g, precision_), ring_.zero());
    for_each_nonzero([&](std::int64_t e, const value_type& c) { v[static_cast<std::size_t>((e - *first) / g)] = c; });
    return QSeries(ring_, *first, g, precision_, std::move(v));
  }

 private:
  Ring ring_;
  std::int64_t min_exp_;
  std::int64_t stride_;
  std::int64_t precision_;
  std::vector<value_type> coeffs_;
};

/// Explicit exponent/coefficient pairs; used as the cheap operand of mul().
template <class Ring>
struct SparseSeries {
  using value_type = typename Ring::value_type;

  Ring ring;
  std::int64_t precision;
  std::vector<std::pair<std::int64_t, value_type>> terms;  // sorted by exponent, nonzero

  static SparseSeries from(const QSeries<Ring>& f) {
    SparseSeries s{f.ring(), f.precision(), {}};
    f.for_each_nonzero([&](std::int64_t e, const value_type& c) { s.terms.emplace_back(e, c); });
    return s;
  }

  QSeries<Ring> to_dense() const {
    if (terms.empty()) return QSeries<Ring>::zero(ring, precision);
    std::int64_t g = 0;
    for (const auto& t : terms) g = std::gcd(g, t.first - terms.front().first);
    if (g == 0) g = std::max<std::int64_t>(kUnit, precision - terms.front().first);
    const std::int64_t lo = terms.front().first;
    std::vector<value_type> v(detail::lattice_count(lo, g, precision), ring.zero());
    for (const auto& [e, c] : terms) v[static_cast<std::size_t>((e - lo) / g)] = c;
    return QSeries<Ring>(ring, lo, g, precision, std::move(v));
  }
};

namespace detail {

template <class Ring>
QSeries<Ring> combine(const QSeries<Ring>& f, const QSeries<Ring>& g, bool subtract) {
  require_same_ring(f.ring(), g.ring());
  const Ring& ring = f.ring();
  const std::int64_t prec = std::min(f.precision(), g.precision());
  const bool f_live = f.size() > 0 && f.min_exp() < prec;
  const bool g_live = g.size() > 0 && g.min_exp() < prec;
  if (!f_live && !g_live) return QSeries<Ring>::zero(ring, prec);

  std::int64_t lo, stride;
  if (f_live && g_live) {
    lo = std::min(f.min_exp(), g.min_exp());
    stride = gcd3(f.effective_stride(), g.effective_stride(), f.min_exp() - g.min_exp());
    if (stride == 0) stride = std::max<std::int64_t>(1, prec - lo);
  } else if (f_live) {
    lo = f.min_exp();
    stride = f.stride();
  } else {
    lo = g.min_exp();
    stride = g.stride();
  }
  std::vector<typename Ring::value_type> v(lattice_count(lo, stride, prec), ring.zero());
  auto place = [&](const QSeries<Ring>& s, bool negate) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::int64_t e = s.exponent_at(i);
      if (e >= prec) break;
      auto& slot = v[static_cast<std::size_t>((e - lo) / stride)];
      if (negate) ring.sub_in_place(slot, s.coeffs()[i]);
      else ring.add_in_place(slot, s.coeffs()[i]);
    }
  };
  if (f_live) place(f, false);
  if (g_live) place(g, subtract);
  return QSeries<Ring>(ring, lo, stride, prec, std::move(v));
}

template <class Ring>
std::vector<std::pair<std::size_t, typename Ring::value_type>> outer_terms(const QSeries<Ring>& f,
                                                                          std::size_t ratio) {
  std::vector<std::pair<std::size_t, typename Ring::value_type>> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f.ring().is_zero(f.coeffs()[i])) out.emplace_back(ratio * i, f.coeffs()[i]);
  return out;
}

template <class Ring>
std::size_t count_nonzero(const QSeries<Ring>& f) {
  std::size_t n = 0;
  for (const auto& c : f.coeffs())
    if (!f.ring().is_zero(c)) ++n;
  return n;
}

}  // namespace detail

template <class Ring>
QSeries<Ring> add(const QSeries<Ring>& f, const QSeries<Ring>& g) {
  return detail::combine(f, g, false);
}

template <class Ring>
QSeries<Ring> sub(const QSeries<Ring>& f, const QSeries<Ring>& g) {
  return detail::combine(f, g, true);
}

template <class Ring>
QSeries<Ring> neg(const QSeries<Ring>& f) {
  std::vector<typename Ring::value_type> v;
  v.reserve(f.size());
  for (const auto& c : f.coeffs()) v.push_back(f.ring().neg(c));
  return QSeries<Ring>(f.ring(), f.min_exp(), f.stride(), f.precision(), std::move(v));
}

template <class Ring>
QSeries<Ring> scale(const QSeries<Ring>& f, const typename Ring::value_type& c) {
  std::vector<typename Ring::value_type> v;
  v.reserve(f.size());
  for (const auto& x : f.coeffs()) v.push_back(f.ring().mul(x, c));
  return QSeries<Ring>(f.ring(), f.min_exp(), f.stride(), f.precision(), std::move(v));
}

template <class Ring>
QSeries<Ring> scale(const QSeries<Ring>& f, std::int64_t k) {
  return scale(f, f.ring().from_int(k));
}

/// Multiplication by q^{e/24}.
template <class Ring>
QSeries<Ring> shift(const QSeries<Ring>& f, std::int64_t e) {
  return QSeries<Ring>(f.ring(), f.min_exp() + e, f.stride(), f.precision() + e,
                       std::vector<typename Ring::value_type>(f.coeffs().begin(), f.coeffs().end()));
}

/// Substitution q -> q^k (k >= 1).
template <class Ring>
QSeries<Ring> rescale(const QSeries<Ring>& f, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("rescale factor must be positive");
  return QSeries<Ring>(f.ring(), f.min_exp() * k, f.stride() * k, f.precision() * k,
                       std::vector<typename Ring::value_type>(f.coeffs().begin(), f.coeffs().end()));
}

/// Cauchy product. Precision is the derivable one: min(f.prec + g.min, g.prec + f.min).
template <class Ring>
QSeries<Ring> mul(const QSeries<Ring>& f, const QSeries<Ring>& g) {
  require_same_ring(f.ring(), g.ring());
  const Ring& ring = f.ring();
  const std::int64_t lo = f.min_exp() + g.min_exp();
  const std::int64_t prec = std::min(f.precision() + g.min_exp(), g.precision() + f.min_exp());
  if (f.size() == 0 || g.size() == 0) return QSeries<Ring>::zero(ring, prec);
  std::int64_t stride = std::gcd(f.effective_stride(), g.effective_stride());
  if (stride == 0) stride = std::max<std::int64_t>(1, prec - lo);
  if (prec <= lo) return QSeries<Ring>::zero(ring, prec);
  std::vector<typename Ring::value_type> out(detail::lattice_count(lo, stride, prec), ring.zero());
  // iterate over the operand with fewer nonzero terms
  const bool f_outer = detail::count_nonzero(f) <= detail::count_nonzero(g);
  const QSeries<Ring>& a = f_outer ? f : g;
  const QSeries<Ring>& b = f_outer ? g : f;
  auto ratio = [stride](const QSeries<Ring>& x) {
    return x.effective_stride() == 0 ? std::size_t{1} : static_cast<std::size_t>(x.stride() / stride);
  };
  const auto outer = detail::outer_terms(a, ratio(a));
  detail::convolve_into(ring, out, outer, b.coeffs(), ratio(b));
  return QSeries<Ring>(ring, lo, stride, prec, std::move(out));
}

/// Dense x sparse product; the sparse operand is given as exponent/coefficient pairs.
template <class Ring>
QSeries<Ring> mul(const QSeries<Ring>& f, const SparseSeries<Ring>& s) {
  require_same_ring(f.ring(), s.ring);
  const Ring& ring = f.ring();
  if (s.terms.empty()) return QSeries<Ring>::zero(ring, s.precision + f.min_exp());
  const std::int64_t e0 = s.terms.front().first;
  std::int64_t stride = f.effective_stride();
  for (const auto& t : s.terms) stride = std::gcd(stride, t.first - e0);
  const std::int64_t lo = f.min_exp() + e0;
  const std::int64_t prec = std::min(f.precision() + e0, s.precision + f.min_exp());
  if (f.size() == 0 || prec <= lo) return QSeries<Ring>::zero(ring, prec);
  if (stride == 0) stride = std::max<std::int64_t>(1, prec - lo);
  std::vector<typename Ring::value_type> out(detail::lattice_count(lo, stride, prec), ring.zero());
  std::vector<std::pair<std::size_t, typename Ring::value_type>> outer;
  outer.reserve(s.terms.size());
  for (const auto& [e, c] : s.terms) outer.emplace_back(static_cast<std::size_t>((e - e0) / stride), c);
  const std::size_t step = f.effective_stride() == 0 ? 1 : static_cast<std::size_t>(f.stride() / stride);
  detail::convolve_into(ring, out, outer, f.coeffs(), step);
  return QSeries<Ring>(ring, lo, stride, prec, std::move(out));
}

template <class Ring>
QSeries<Ring> operator+(const QSeries<Ring>& f, const QSeries<Ring>& g) { return add(f, g); }
template <class Ring>
QSeries<Ring> operator-(const QSeries<Ring>& f, const QSeries<Ring>& g) { return sub(f, g); }
template <class Ring>
QSeries<Ring> operator-(const QSeries<Ring>& f) { return neg(f); }
template <class Ring>
QSeries<Ring> operator*(const QSeries<Ring>& f, const QSeries<Ring>& g) { return mul(f, g); }
template <class Ring>
QSeries<Ring> operator*(const QSeries<Ring>& f, const SparseSeries<Ring>& g) { return mul(f, g); }

namespace detail {

template <class Ring>
void invert_unit_series(const Ring& ring, std::span<const typename Ring::value_type> u,
                        std::vector<typename Ring::value_type>& g) {
  const auto inv0 = ring.unit_inverse(u[0]);
  std::vector<std::pair<std::size_t, typename Ring::value_type>> nz;
  for (std::size_t k = 1; k < u.size(); ++k)
    if (!ring.is_zero(u[k])) nz.emplace_back(k, u[k]);
  g[0] = inv0;
  for (std::size_t n = 1; n < g.size(); ++n) {
    auto s = ring.zero();
    for (const auto& [k, c] : nz) {
      if (k > n) break;
      ring.addmul(s, c, g[n - k]);
    }
    g[n] = ring.neg(ring.mul(s, inv0));
  }
}

inline void invert_unit_series(const ResidueRing& ring, std::span<const std::uint64_t> u,
                               std::vector<std::uint64_t>& g) {
  const std::uint64_t m = ring.modulus();
  if (m > kSmallModulusLimit) {
    invert_unit_series<ResidueRing>(ring, u, g);
    return;
  }
  const std::uint64_t inv0 = ring.unit_inverse(u[0]);
  std::vector<std::pair<std::size_t, std::uint64_t>> nz;
  for (std::size_t k = 1; k < u.size(); ++k)
    if (u[k] != 0) nz.emplace_back(k, u[k]);
  const std::uint64_t sq = (m - 1) * (m - 1);
  const std::uint64_t budget = (std::numeric_limits<std::uint64_t>::max() - m) / sq;
  g[0] = inv0;
  for (std::size_t n = 1; n < g.size(); ++n) {
    std::uint64_t s = 0, used = 0;
    for (const auto& [k, c] : nz) {
      if (k > n) break;
      if (used == budget) {
        s %= m;
        used = 0;
      }
      s += c * g[n - k];
      ++used;
    }
    g[n] = ring.neg(ring.mul(s % m, inv0));
  }
}

}  // namespace detail

/// Multiplicative inverse. The leading coefficient must be a unit of the ring.
template <class Ring>
QSeries<Ring> invert(const QSeries<Ring>& f) {
  const Ring& ring = f.ring();
  std::size_t i0 = 0;
  while (i0 < f.size() && ring.is_zero(f.coeffs()[i0])) ++i0;
  if (i0 == f.size()) throw not_a_unit("cannot invert a series with no known nonzero coefficient");
  const std::int64_t lead = f.exponent_at(i0);
  if (!ring.is_unit(f.coeffs()[i0]))
    throw not_a_unit("leading coefficient " + ring.to_string(f.coeffs()[i0]) + " is not a unit");
  const std::int64_t rel = f.precision() - lead;
  const auto u = f.coeffs().subspan(i0);
  std::vector<typename Ring::value_type> g(detail::lattice_count(0, f.stride(), rel), ring.zero());
  detail::invert_unit_series(ring, u, g);
  return QSeries<Ring>(ring, -lead, f.stride(), rel - lead, std::move(g));
}

/// f / s for a sparse divisor with unit leading coefficient, O(nnz(s) * size).
template <class Ring>
QSeries<Ring> divide(const QSeries<Ring>& f, const SparseSeries<Ring>& s) {
  require_same_ring(f.ring(), s.ring);
  const Ring& ring = f.ring();
  if (s.terms.empty()) throw not_a_unit("division by a series with no known nonzero coefficient");
  const std::int64_t lead = s.terms.front().first;
  if (!ring.is_unit(s.terms.front().second))
    throw not_a_unit("leading coefficient " + ring.to_string(s.terms.front().second) + " is not a unit");
  const std::int64_t prec = std::min(f.precision() - lead, s.precision + f.min_exp() - 2 * lead);
  const std::int64_t lo = f.min_exp() - lead;
  if (f.size() == 0 || prec <= lo) return QSeries<Ring>::zero(ring, prec);
  std::int64_t stride = f.effective_stride();
  for (const auto& t : s.terms) stride = std::gcd(stride, t.first - lead);
  if (stride == 0) stride = std::max<std::int64_t>(1, prec - lo);
  std::vector<typename Ring::value_type> y(detail::lattice_count(lo, stride, prec), ring.zero());
  const std::size_t step = f.effective_stride() == 0 ? 1 : static_cast<std::size_t>(f.stride() / stride);
  for (std::size_t i = 0; i < f.size() && i * step < y.size(); ++i) y[i * step] = f.coeffs()[i];
  std::vector<std::pair<std::size_t, typename Ring::value_type>> tail;
  for (std::size_t k = 1; k < s.terms.size(); ++k)
    tail.emplace_back(static_cast<std::size_t>((s.terms[k].first - lead) / stride), s.terms[k].second);
  const auto inv0 = ring.unit_inverse(s.terms.front().second);
  for (std::size_t n = 0; n < y.size(); ++n) {
    auto& acc = y[n];
    for (const auto& [k, c] : tail) {
      if (k > n) break;
      ring.submul(acc, c, y[n - k]);
    }
    acc = ring.mul(acc, inv0);
  }
  return QSeries<Ring>(ring, lo, stride, prec, std::move(y));
}

/// f^k by square-and-multiply; negative k inverts first.
template <class Ring>
QSeries<Ring> pow(const QSeries<Ring>& f, std::int64_t k) {
  if (k < 0) return invert(pow(f, -k));
  auto result = QSeries<Ring>::one(f.ring(), f.precision() - f.min_exp());
  if (k == 0) return result;
  QSeries<Ring> base = f;
  bool first = true;
  while (k) {
    if (k & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

/// q d/dq: the coefficient at exponent e (1/24 units) is scaled by e/24.
template <class Ring>
QSeries<Ring> qderiv(const QSeries<Ring>& f) {
  const Ring& ring = f.ring();
  std::vector<typename Ring::value_type> v;
  v.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t e = f.exponent_at(i);
    const auto& c = f.coeffs()[i];
    if (ring.is_zero(c)) {
      v.push_back(ring.zero());
    } else if (e % kUnit == 0) {
      v.push_back(ring.mul_int(c, e / kUnit));
    } else {
      v.push_back(ring.div_exact_int(ring.mul_int(c, e), kUnit));
    }
  }
  return QSeries<Ring>(ring, f.min_exp(), f.stride(), f.precision(), std::move(v));
}

template <class Ring>
typename Ring::value_type coeff_at(const QSeries<Ring>& f, std::int64_t e) {
  return f.coeff_at(e);
}

/// Reduction of an exact series into Z/mZ.
inline QSeries<ResidueRing> reduce_mod(const QSeries<IntegerRing>& f, std::uint64_t m) {
  const ResidueRing ring(m);
  std::vector<std::uint64_t> v;
  v.reserve(f.size());
  for (const auto& c : f.coeffs()) v.push_back(ring.from_mpz(c));
  return QSeries<ResidueRing>(ring, f.min_exp(), f.stride(), f.precision(), std::move(v));
}

/// Reduction Z/nZ -> Z/mZ, requires m | n.
inline QSeries<ResidueRing> reduce_mod(const QSeries<ResidueRing>& f, std::uint64_t m) {
  const ResidueRing ring(m);
  if (f.ring().modulus() % m != 0)
    throw ring_mismatch("cannot reduce modulo " + std::to_string(m) + " from modulus " +
                        std::to_string(f.ring().modulus()));
  std::vector<std::uint64_t> v;
  v.reserve(f.size());
  for (const auto c : f.coeffs()) v.push_back(c % m);
  return QSeries<ResidueRing>(ring, f.min_exp(), f.stride(), f.precision(), std::move(v));
}

/// First exponent below `bound` where f and g differ, or nullopt if they agree there.
template <class Ring>
std::optional<std::int64_t> first_mismatch(const QSeries<Ring>& f, const QSeries<Ring>& g, std::int64_t bound) {
  if (bound > f.precision() || bound > g.precision())
    throw precision_error("comparison bound " + std::to_string(bound) + " exceeds operand precision");
  const auto d = sub(f, g);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::int64_t e = d.exponent_at(i);
    if (e >= bound) break;
    if (!d.ring().is_zero(d.coeffs()[i])) return e;
  }
  return std::nullopt;
}

/// Agreement of f and g on every exponent both know.
template <class Ring>
bool agree(const QSeries<Ring>& f, const QSeries<Ring>& g) {
  return !first_mismatch(f, g, std::min(f.precision(), g.precision())).has_value();
}

}  // namespace sptlab
