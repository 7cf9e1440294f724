#pragma once

// Kronecker symbol, quadratic Dirichlet characters, the weight 3/2 Hecke
// operator T(l^2) on integer-indexed coefficient maps, twists, the Shimura
// lift B_t(n), the residue projection P and Sturm bounds.

#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sptlab/errors.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

/// Kronecker symbol (a/b), including b <= 0 and even b.
inline int kronecker(std::int64_t a, std::int64_t b) {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (b < 0) {
    b = -b;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (b % 2 == 0) {
    b /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t a8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/b), b odd positive
  std::int64_t x = ((a % b) + b) % b;
  std::int64_t y = b;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t y8 = y % 8;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

/// A character given by its values on residues modulo `modulus`.
struct DirichletCharacter {
  std::string name;
  std::int64_t modulus = 1;
  std::vector<int> values;  // values[n mod modulus]

  int operator()(std::int64_t n) const {
    const std::int64_t r = ((n % modulus) + modulus) % modulus;
    return values[static_cast<std::size_t>(r)];
  }

  static DirichletCharacter from_rule(std::string name, std::int64_t modulus, const std::function<int(std::int64_t)>& rule) {
    if (modulus < 1) throw std::invalid_argument("character modulus must be positive");
    DirichletCharacter c{std::move(name), modulus, {}};
    c.values.reserve(static_cast<std::size_t>(modulus));
    for (std::int64_t r = 0; r < modulus; ++r) c.values.push_back(std::gcd(r, modulus) == 1 ? rule(r) : 0);
    return c;
  }

  static DirichletCharacter trivial() { return {"trivial", 1, {1}}; }

  static DirichletCharacter chi12() {
    return from_rule("chi12", 12, [](std::int64_t r) { return (r == 1 || r == 11) ? 1 : -1; });
  }
  static DirichletCharacter psi2() { return from_rule("psi2", 2, [](std::int64_t) { return 1; }); }
  static DirichletCharacter psi3() {
    return from_rule("psi3", 3, [](std::int64_t r) { return r == 1 ? 1 : -1; });
  }
  static DirichletCharacter psi8() {
    return from_rule("psi8", 8, [](std::int64_t r) { return (r == 1 || r == 3) ? 1 : -1; });
  }

  /// psi_t(n) = chi(n) (-1/n)^lambda (t/n).
  static DirichletCharacter psi_t(std::int64_t t, std::int64_t lambda, const DirichletCharacter& chi) {
    if (t < 1) throw std::invalid_argument("psi_t needs t >= 1");
    const std::int64_t period = 4 * t;
    const std::int64_t m = std::lcm(chi.modulus, period);
    return from_rule("psi_t:" + std::to_string(t) + "," + std::to_string(lambda) + "," + chi.name, m,
                     [&](std::int64_t r) {
                       const int sgn = (lambda % 2 != 0) ? kronecker(-1, r) : 1;
                       return chi(r) * sgn * kronecker(t, r);
                     });
  }
};

/// Registry: chi12, psi2, psi3, psi8, trivial, psi_t:t,lambda,chi.
inline DirichletCharacter character_by_name(const std::string& name) {
  if (name == "chi12") return DirichletCharacter::chi12();
  if (name == "psi2") return DirichletCharacter::psi2();
  if (name == "psi3") return DirichletCharacter::psi3();
  if (name == "psi8") return DirichletCharacter::psi8();
  if (name == "trivial") return DirichletCharacter::trivial();
  const std::string prefix = "psi_t:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string rest = name.substr(prefix.size());
    const auto c1 = rest.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : rest.find(',', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("psi_t needs t,lambda,chi: " + name);
    try {
      return DirichletCharacter::psi_t(std::stoll(rest.substr(0, c1)), std::stoll(rest.substr(c1 + 1, c2 - c1 - 1)),
                                       character_by_name(rest.substr(c2 + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad psi_t parameters: " + name);
    }
  }
  throw std::invalid_argument("unknown character: " + name);
}

/// Coefficients b(first), b(first+1), ...; b(n) = 0 below `first`.
template <class Ring>
struct CoeffMap {
  using value_type = typename Ring::value_type;

  Ring ring;
  std::int64_t first = 0;
  std::vector<value_type> values;

  std::int64_t last() const { return first + static_cast<std::int64_t>(values.size()) - 1; }

  value_type at(std::int64_t n) const {
    if (n < first) return ring.zero();
    if (n > last())
      throw table_too_short("coefficient " + std::to_string(n) + " beyond known index " + std::to_string(last()));
    return values[static_cast<std::size_t>(n - first)];
  }

  /// Integer-exponent coefficients of f for q^lo .. q^hi.
  static CoeffMap from_series(const QSeries<Ring>& f, std::int64_t lo, std::int64_t hi) {
    CoeffMap m{f.ring(), lo, {}};
    m.values.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)));
    for (std::int64_t n = lo; n <= hi; ++n) m.values.push_back(f.coeff_q(n));
    return m;
  }

  bool operator==(const CoeffMap& o) const { return first == o.first && values == o.values; }
};

/// (b | T_chi(l^2))(n) = b(l^2 n) + chi(l) (-n/l) b(n) + chi(l^2) l b(n/l^2) for lo <= n <= hi.
template <class Ring>
CoeffMap<Ring> hecke_t_ell2(const CoeffMap<Ring>& b, std::int64_t ell, const DirichletCharacter& chi, std::int64_t lo,
                            std::int64_t hi) {
  const Ring& ring = b.ring;
  const std::int64_t l2 = ell * ell;
  if (hi * l2 > b.last())
    throw table_too_short("Hecke image to " + std::to_string(hi) + " needs b up to " + std::to_string(hi * l2));
  const int cl = chi(ell);
  const int cl2 = chi(l2);
  CoeffMap<Ring> out{ring, lo, {}};
  for (std::int64_t n = lo; n <= hi; ++n) {
    auto v = b.at(l2 * n);
    const int k = cl * kronecker(-n, ell);
    if (k != 0) v = ring.add(v, ring.mul_int(b.at(n), k));
    if (cl2 != 0 && n % l2 == 0) v = ring.add(v, ring.mul_int(b.at(n / l2), cl2 * ell));
    out.values.push_back(std::move(v));
  }
  return out;
}

template <class Ring>
CoeffMap<Ring> hecke_t_ell2(const CoeffMap<Ring>& b, std::int64_t ell, const DirichletCharacter& chi, std::int64_t N) {
  return hecke_t_ell2(b, ell, chi, 1, N);
}

namespace detail {

template <class Ring>
void require_integral(const QSeries<Ring>& f, const char* what) {
  if (!f.has_integral_exponents())
    throw std::invalid_argument(std::string(what) + " needs a series in integral powers of q");
}

}  // namespace detail

/// sum chi(n) a(n) q^n.
template <class Ring>
QSeries<Ring> twist(const QSeries<Ring>& f, const DirichletCharacter& chi) {
  detail::require_integral(f, "twist");
  const Ring& ring = f.ring();
  std::vector<typename Ring::value_type> v;
  v.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int c = chi(f.exponent_at(i) / kUnit);
    const auto& x = f.coeffs()[i];
    v.push_back(c == 0 ? ring.zero() : c == 1 ? x : ring.neg(x));
  }
  return QSeries<Ring>(ring, f.min_exp(), f.stride(), f.precision(), std::move(v));
}

/// Keeps q^n with n mod modulus in `residues`.
template <class Ring>
QSeries<Ring> project_residues(const QSeries<Ring>& f, const std::set<std::int64_t>& residues, std::int64_t modulus) {
  detail::require_integral(f, "project_residues");
  if (modulus < 1) throw std::invalid_argument("projection modulus must be positive");
  const Ring& ring = f.ring();
  std::vector<typename Ring::value_type> v;
  v.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t n = f.exponent_at(i) / kUnit;
    const std::int64_t r = ((n % modulus) + modulus) % modulus;
    v.push_back(residues.count(r) ? f.coeffs()[i] : ring.zero());
  }
  return QSeries<Ring>(ring, f.min_exp(), f.stride(), f.precision(), std::move(v));
}

/// Residues 1, 11, 17, 19 mod 24.
inline const std::set<std::int64_t>& projection_residues() {
  static const std::set<std::int64_t> r{1, 11, 17, 19};
  return r;
}

namespace detail {

template <class Ring>
QSeries<Ring> twist_combination(const QSeries<Ring>& f) {
  const auto psi3 = DirichletCharacter::psi3();
  const auto base = twist(twist(twist(f, DirichletCharacter::psi2()), psi3), psi3);
  return add(base, twist(base, DirichletCharacter::psi8()));
}

}  // namespace detail

/// P(f) as half the sum of the psi2 psi3 psi3 twist and its psi8 twist, exactly.
inline QSeries<IntegerRing> projection_by_twists(const QSeries<IntegerRing>& f) {
  const auto s = detail::twist_combination(f);
  std::vector<mpz_class> v;
  v.reserve(s.size());
  for (const auto& c : s.coeffs()) v.push_back(s.ring().div_exact_int(c, 2));
  return QSeries<IntegerRing>(s.ring(), s.min_exp(), s.stride(), s.precision(), std::move(v));
}

/// Same, from a series modulo 2m to the projection modulo m (exact halving).
inline QSeries<ResidueRing> projection_by_twists(const QSeries<ResidueRing>& f) {
  const std::uint64_t m2 = f.ring().modulus();
  if (m2 % 2 != 0 || m2 < 4) throw std::invalid_argument("halving needs an even modulus >= 4");
  const auto s = detail::twist_combination(f);
  const ResidueRing half(m2 / 2);
  std::vector<std::uint64_t> v;
  v.reserve(s.size());
  for (const auto c : s.coeffs()) {
    if (c % 2 != 0) throw not_a_unit("twist combination has an odd coefficient " + std::to_string(c));
    v.push_back(c / 2);
  }
  return QSeries<ResidueRing>(half, s.min_exp(), s.stride(), s.precision(), std::move(v));
}

/// Shimura lift parameters: t squarefree, lambda >= 2, base character chi.
struct LiftSpec {
  std::int64_t t = 1;
  std::int64_t lambda = 2;
  DirichletCharacter chi = DirichletCharacter::trivial();

  DirichletCharacter psi() const { return DirichletCharacter::psi_t(t, lambda, chi); }
};

/// B_t(n) = sum_{d | n} psi_t(d) d^{lambda-1} b(t n^2 / d^2), 1 <= n <= N.
/// `b` is any callable index -> ring element.
template <class Ring, class Coeff>
CoeffMap<Ring> shimura_lift_with(const Ring& ring, Coeff&& b, const LiftSpec& spec, std::int64_t N) {
  if (spec.lambda < 2) throw std::invalid_argument("Shimura lift needs lambda >= 2");
  const auto psi = spec.psi();
  CoeffMap<Ring> out{ring, 1, std::vector<typename Ring::value_type>(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)), ring.zero())};
  for (std::int64_t d = 1; d <= N; ++d) {
    const int pd = psi(d);
    if (pd == 0) continue;
    auto w = ring.pow_int(d, static_cast<std::uint64_t>(spec.lambda - 1));
    if (pd < 0) w = ring.neg(w);
    for (std::int64_t k = 1; k * d <= N; ++k) {
      // n = k d, t n^2 / d^2 = t k^2
      const auto bv = b(spec.t * k * k);
      if (!ring.is_zero(bv)) ring.addmul(out.values[static_cast<std::size_t>(k * d - 1)], w, bv);
    }
  }
  return out;
}

template <class Ring>
CoeffMap<Ring> shimura_lift(const CoeffMap<Ring>& b, const LiftSpec& spec, std::int64_t N) {
  if (spec.t * N * N > b.last())
    throw table_too_short("Shimura lift to " + std::to_string(N) + " needs b up to " + std::to_string(spec.t * N * N));
  return shimura_lift_with(b.ring, [&](std::int64_t m) { return b.at(m); }, spec, N);
}

template <class Ring>
CoeffMap<Ring> shimura_lift(const QSeries<Ring>& g, const LiftSpec& spec, std::int64_t N) {
  detail::require_integral(g, "shimura_lift");
  if (kUnit * spec.t * N * N >= g.precision())
    throw precision_error("Shimura lift to " + std::to_string(N) + " needs q^" + std::to_string(spec.t * N * N));
  return shimura_lift_with(g.ring(), [&](std::int64_t m) { return g.coeff_q(m); }, spec, N);
}

/// floor(k mu / 12), mu = N prod_{p | N} (1 + 1/p).
inline std::int64_t sturm_bound(std::int64_t weight, std::int64_t level) {
  if (weight < 1 || level < 1) throw std::invalid_argument("Sturm bound needs weight >= 1 and level >= 1");
  std::int64_t num = level, rest = level;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    num = num / p * (p + 1);
  }
  if (rest > 1) num = num / rest * (rest + 1);
  return weight * num / 12;
}

}  // namespace sptlab
