#pragma once

// Positive definite integral binary quadratic forms (a, b, c) = ax^2 + bxy + cy^2:
// reduction, reduced-class enumeration, bounded representation search,
// value residues and Dirichlet composition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace sptlab {

struct BQF {
  std::int64_t a = 1, b = 0, c = 1;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t operator()(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
  bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
  bool is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

  /// |b| <= a <= c, with b >= 0 when |b| = a or a = c.
  bool is_reduced() const {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
  }

  std::string to_string() const { return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c); }

  auto operator<=>(const BQF&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const BQF& f) { return os << '(' << f.to_string() << ')'; }

inline std::int64_t discriminant(const BQF& f) { return f.discriminant(); }

/// Unique reduced form properly equivalent to f.
inline BQF reduce(BQF f) {
  if (!f.is_positive_definite()) throw std::invalid_argument("reduce needs a positive definite form, got " + f.to_string());
  auto normalize = [](BQF& g) {
    // b into (-a, a] by x -> x + k y
    const std::int64_t two_a = 2 * g.a;
    std::int64_t r = ((g.b % two_a) + two_a) % two_a;  // [0, 2a)
    if (r > g.a) r -= two_a;                             // (-a, a]
    const std::int64_t k = (r - g.b) / two_a;
    g.c = g.a * k * k + g.b * k + g.c;
    g.b = r;
  };
  normalize(f);
  while (f.a > f.c) {
    std::swap(f.a, f.c);
    f.b = -f.b;
    normalize(f);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

/// Primitive reduced forms of discriminant D < 0, sorted by (a, |b|, -b).
inline std::vector<BQF> enumerate_reduced(std::int64_t D) {
  if (D >= 0) throw std::invalid_argument("enumerate_reduced needs D < 0");
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
  std::vector<BQF> out;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const BQF f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const BQF& x, const BQF& y) {
    if (x.a != y.a) return x.a < y.a;
    if (std::abs(x.b) != std::abs(y.b)) return std::abs(x.b) < std::abs(y.b);
    return x.b > y.b;
  });
  return out;
}

namespace detail {

inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// (g, x, y) with x a + y b = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (r0 < 0) return {-r0, -x0, -y0};
  return {r0, x0, y0};
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace detail

/// All (x, y) with f(x, y) = M, sorted.
inline std::vector<std::pair<std::int64_t, std::int64_t>> representations(const BQF& f, std::int64_t M) {
  if (M < 0) throw std::invalid_argument("representations needs M >= 0");
  if (!f.is_positive_definite()) throw std::invalid_argument("representations needs a positive definite form");
  const std::int64_t absD = -f.discriminant();
  // 4a f = (2ax + by)^2 + |D| y^2
  const std::int64_t ymax = detail::isqrt(4 * f.a * M / absD);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    // a x^2 + (b y) x + (c y^2 - M) = 0
    const std::int64_t disc = f.b * f.b * y * y - 4 * f.a * (f.c * y * y - M);
    const std::int64_t s = detail::isqrt(disc);
    if (s < 0 || s * s != disc) continue;
    for (const std::int64_t num : {-f.b * y + s, -f.b * y - s}) {
      if (num % (2 * f.a) != 0) continue;
      out.emplace_back(num / (2 * f.a), y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// {f(x, y) mod m : 0 <= x, y < m}.
inline std::set<std::int64_t> residue_set(const BQF& f, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("residue_set needs m >= 2");
  std::set<std::int64_t> out;
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y) out.insert(detail::mod_floor(f(x, y), m));
  return out;
}

/// Dirichlet composition of primitive forms of one discriminant, reduced.
inline BQF compose(BQF f1, BQF f2) {
  if (f1.discriminant() != f2.discriminant())
    throw std::invalid_argument("compose needs equal discriminants: " + f1.to_string() + " vs " + f2.to_string());
  if (!f1.is_primitive() || !f2.is_primitive()) throw std::invalid_argument("compose needs primitive forms");
  if (!f1.is_positive_definite() || !f2.is_positive_definite())
    throw std::invalid_argument("compose needs positive definite forms");
  const std::int64_t D = f1.discriminant();
  if (f1.a > f2.a) std::swap(f1, f2);
  const std::int64_t s = (f1.b + f2.b) / 2;
  const std::int64_t n = f2.b - s;
  std::int64_t y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    auto [g, u, v] = detail::ext_gcd(f2.a, f1.a);
    (void)v;
    d = g;
    y1 = u;
  }
  std::int64_t x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    auto [g, u, v] = detail::ext_gcd(s, d);
    d1 = g;
    x2 = u;
    y2 = -v;
  }
  const std::int64_t v1 = f1.a / d1;
  const std::int64_t v2 = f2.a / d1;
  const std::int64_t r = detail::mod_floor(y1 * y2 * n - x2 * f2.c, v1);
  const std::int64_t b3 = f2.b + 2 * v2 * r;
  const std::int64_t a3 = v1 * v2;
  const std::int64_t c3 = (b3 * b3 - D) / (4 * a3);
  return reduce(BQF{a3, b3, c3});
}

/// Class group of discriminant D as reduced forms plus the index table of compose.
struct ClassGroupTable {
  std::vector<BQF> forms;
  std::vector<std::vector<std::size_t>> product;  // product[i][j] = index of forms[i] * forms[j]

  std::size_t index_of(const BQF& f) const {
    const auto g = reduce(f);
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (forms[i] == g) return i;
    throw std::invalid_argument("form " + f.to_string() + " is not in the class list");
  }
};

inline ClassGroupTable class_group_table(std::int64_t D) {
  ClassGroupTable t{enumerate_reduced(D), {}};
  t.product.assign(t.forms.size(), std::vector<std::size_t>(t.forms.size(), 0));
  for (std::size_t i = 0; i < t.forms.size(); ++i)
    for (std::size_t j = 0; j < t.forms.size(); ++j) t.product[i][j] = t.index_of(compose(t.forms[i], t.forms[j]));
  return t;
}

enum class PropEquation { prop1, prop2 };

/// Solutions (k, m) of l^2 = (6k-1)^2 + 6(4m-2)^2, m >= 1 (prop1)
/// or l^2 = (6k-1)^2 + 3(8m+4)^2, m >= 0 (prop2).
inline std::vector<std::pair<std::int64_t, std::int64_t>> prop_solutions(std::int64_t ell, PropEquation which) {
  const std::int64_t target = ell * ell;
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t m = which == PropEquation::prop1 ? 1 : 0;; ++m) {
    const std::int64_t y = which == PropEquation::prop1 ? 4 * m - 2 : 8 * m + 4;
    const std::int64_t w = which == PropEquation::prop1 ? 6 * y * y : 3 * y * y;
    if (w > target) break;
    const std::int64_t x = detail::isqrt(target - w);
    if (x * x != target - w) continue;
    for (const std::int64_t sx : {x, -x}) {
      if (detail::mod_floor(sx + 1, 6) == 0) out.emplace_back((sx + 1) / 6, m);
      if (x == 0) break;
    }
  }
  return out;
}

inline bool prop_solution_exists(std::int64_t ell, PropEquation which) { return !prop_solutions(ell, which).empty(); }

}  // namespace sptlab
