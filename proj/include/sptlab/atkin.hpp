#pragma once

// The l-series Z_l, Xi_l, A_l, S_l built from p / d / a / spt tables, Atkin's
// polynomial coefficients c_{k,l}, the level-one basis decomposition and the
// identity checks that tie them together.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sptlab/errors.hpp"
#include "sptlab/forms.hpp"
#include "sptlab/hecke.hpp"
#include "sptlab/partitions.hpp"
#include "sptlab/quadforms.hpp"
#include "sptlab/report.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline int chi12(std::int64_t n) {
  const std::int64_t r = ((n % 12) + 12) % 12;
  if (r == 1 || r == 11) return 1;
  if (r == 5 || r == 7) return -1;
  return 0;
}

/// 2-adic exponent of the congruence for l by l mod 24; residue 9 holds no prime >= 5.
inline int beta_for_residue(std::int64_t r) {
  switch (r) {
    case 5: case 7: return 3;
    case 13: case 23: return 4;
    case 1: case 11: case 17: case 19: return 5;
    default: throw std::invalid_argument("no prime >= 5 has residue " + std::to_string(r) + " mod 24");
  }
}

struct PrimeContext {
  std::int64_t ell = 5;
  std::int64_t s = 1;  // (l^2 - 1) / 24
  int eps = -1;        // chi12(l)
  int beta = 3;
};

inline PrimeContext prime_context(std::int64_t ell) {
  if (ell < 5 || !is_prime(ell)) throw std::invalid_argument("need a prime >= 5, got " + std::to_string(ell));
  return {ell, (ell * ell - 1) / 24, chi12(ell), beta_for_residue(ell % 24)};
}

enum class ComboKind { Z, Xi, A, S };

inline const char* to_string(ComboKind k) {
  switch (k) {
    case ComboKind::Z: return "Z";
    case ComboKind::Xi: return "Xi";
    case ComboKind::A: return "A";
    case ComboKind::S: return "S";
  }
  return "?";
}

/// p, spt, d, a through one index; unrequested parts stay empty.
template <class Ring>
struct SeriesTables {
  Ring ring;
  std::optional<CoeffTable<Ring>> p, spt, d, a;

  const CoeffTable<Ring>& table_for(ComboKind k) const {
    const std::optional<CoeffTable<Ring>>* t = nullptr;
    switch (k) {
      case ComboKind::Z: t = &p; break;
      case ComboKind::Xi: t = &d; break;
      case ComboKind::A: t = &a; break;
      case ComboKind::S: t = &spt; break;
    }
    if (!t->has_value()) throw std::logic_error(std::string("tables lack the series for ") + to_string(k));
    return **t;
  }
};

/// Tables through index M for the requested kinds.
template <class Ring>
SeriesTables<Ring> make_tables(std::int64_t M, const Ring& ring, std::initializer_list<ComboKind> kinds) {
  bool need_p = false, need_spt = false;
  for (const auto k : kinds) {
    need_p = need_p || k != ComboKind::S;
    need_spt = need_spt || k == ComboKind::A || k == ComboKind::S;
  }
  SeriesTables<Ring> t{ring, {}, {}, {}, {}};
  M = std::max<std::int64_t>(M, 1);
  if (need_p) t.p = partition_table(M, ring);
  if (need_spt) t.spt = CoeffTable<Ring>(spt_table(M, ring));
  if (need_p) {
    if (need_spt) {
      auto m = mock_tables(*t.p, SptTable<Ring>{*t.spt, SptMethod::automatic});
      t.d = std::move(m.d);
      t.a = std::move(m.a);
    } else {
      CoeffTable<Ring> d{ring, {}};
      for (std::int64_t n = 0; n <= M; ++n) d.values.push_back(ring.mul_int(t.p->at(n), 24 * n - 1));
      t.d = std::move(d);
    }
  }
  return t;
}

/// Coefficient of q^{n - 1/24} in the chosen l-series.
template <class Ring>
typename Ring::value_type combo_coefficient(ComboKind kind, const PrimeContext& ctx, std::int64_t n,
                                            const SeriesTables<Ring>& tables) {
  const Ring& ring = tables.ring;
  const auto& T = tables.table_for(kind);
  const std::int64_t l2 = ctx.ell * ctx.ell;
  const int jac = kronecker(1 - 24 * n, ctx.ell);
  auto v = T.at(l2 * n - ctx.s);
  std::int64_t middle;
  if (kind == ComboKind::Z) {
    v = ring.mul_int(v, ctx.ell * l2);
    middle = ctx.ell * ctx.eps * jac;
  } else {
    middle = ctx.eps * (jac - 1 - ctx.ell);
  }
  if (middle != 0) ring.add_in_place(v, ring.mul_int(T.at(n), middle));
  if ((n + ctx.s) % l2 == 0 && n + ctx.s >= 0) {
    auto third = T.at((n + ctx.s) / l2);
    ring.add_in_place(v, kind == ComboKind::Z ? third : ring.mul_int(third, ctx.ell));
  }
  return v;
}

/// sum over n of the coefficient times q^{n - 1/24}, n from -s (Z, Xi, A) or 1 (S) through N.
template <class Ring>
QSeries<Ring> combo_series(ComboKind kind, const PrimeContext& ctx, std::int64_t N, const SeriesTables<Ring>& tables) {
  const std::int64_t need = ctx.ell * ctx.ell * N - ctx.s;
  if (need > tables.table_for(kind).max_index())
    throw table_too_short(std::string(to_string(kind)) + " series to n=" + std::to_string(N) + " needs tables to " +
                          std::to_string(need));
  const std::int64_t n0 = kind == ComboKind::S ? 1 : -ctx.s;
  return QSeries<Ring>::generate(tables.ring, kUnit * n0 - 1, kUnit, kUnit * (N + 1) - 1, [&](std::int64_t e) {
    return combo_coefficient(kind, ctx, (e + 1) / kUnit, tables);
  });
}

template <class Ring>
QSeries<Ring> combo_series(ComboKind kind, const PrimeContext& ctx, std::int64_t N, const Ring& ring) {
  return combo_series(kind, ctx, N, make_tables(ctx.ell * ctx.ell * N, ring, {kind}));
}

/// The same A_l coefficients through the Hecke action on alpha(24z):
/// alpha(24z) | T(l^2) - chi12(l)(1+l) alpha(24z), indexed by m = 24n - 1 for n = -s..N.
template <class Ring>
CoeffMap<Ring> hecke_alpha_image(const PrimeContext& ctx, std::int64_t N, const SeriesTables<Ring>& tables) {
  const Ring& ring = tables.ring;
  const auto& a = tables.table_for(ComboKind::A);
  const std::int64_t l2 = ctx.ell * ctx.ell;
  const std::int64_t top = l2 * (kUnit * N - 1);
  CoeffMap<Ring> b{ring, -1, std::vector<typename Ring::value_type>(static_cast<std::size_t>(top + 2), ring.zero())};
  for (std::int64_t m = -1; m <= top; m += kUnit) b.values[static_cast<std::size_t>(m + 1)] = a.at((m + 1) / kUnit);
  auto image = hecke_t_ell2(b, ctx.ell, DirichletCharacter::chi12(), -l2, kUnit * N - 1);
  const std::int64_t k = -static_cast<std::int64_t>(ctx.eps) * (1 + ctx.ell);
  for (std::int64_t m = image.first; m <= image.last(); ++m) {
    auto& slot = image.values[static_cast<std::size_t>(m - image.first)];
    ring.add_in_place(slot, ring.mul_int(b.at(m), k));
  }
  return image;
}

/// c_{0..k_max, l}: coefficients of C_l(x) = l chi12(l) + A_{s_l}(x).
struct AtkinCoeffs {
  std::int64_t ell = 5;
  std::int64_t k_max = 0;
  std::vector<mpz_class> c;

  /// c_k, which vanishes for k > s_l; asking past k_max otherwise is an error.
  mpz_class coefficient(std::int64_t k, std::int64_t s) const {
    if (k > s) return 0;
    if (k < 0 || k > k_max) throw std::out_of_range("c_" + std::to_string(k) + " was not computed");
    return c[static_cast<std::size_t>(k)];
  }
};

/// c_k = [q^{s-k}] of X Y^{k+1}, X = (q;q)^{-23} E4^2 E6, Y = (q;q)^{24} / E4^3.
inline AtkinCoeffs atkin_coeffs(std::int64_t ell, std::int64_t k_max) {
  const auto ctx = prime_context(ell);
  if (k_max > ctx.s || k_max < 0)
    throw std::invalid_argument("k_max=" + std::to_string(k_max) + " outside 0.." + std::to_string(ctx.s));
  const IntegerRing Z;
  const std::int64_t P = through_q(ctx.s);
  const auto e4 = eisenstein(4, P, Z);
  const auto X = mul(mul(pow(e4, 2), eisenstein(6, P, Z)), eta_power(1, -23, P - 23, Z).truncated(P - 23));
  const auto Y = mul(eta_power(1, 24, P + 24, Z), invert(pow(e4, 3)));
  // X and Y carry the q^{-23/24} and q shifts of the eta powers; undo them.
  const auto Xn = shift(X, 23);
  const auto Yn = shift(Y, -24);
  AtkinCoeffs out{ell, k_max, {}};
  auto T = mul(Xn, Yn);
  for (std::int64_t k = 0; k <= k_max; ++k) {
    if (k > 0) T = mul(T, Yn);
    out.c.push_back(T.coeff_q(ctx.s - k));
  }
  out.c[0] += ctx.ell * ctx.eps;
  return out;
}

/// C_l(j) = sum c_k j^k, known through q^depth.
inline QSeries<IntegerRing> atkin_polynomial_in_j(const AtkinCoeffs& ac, std::int64_t depth) {
  const IntegerRing Z;
  const auto ctx = prime_context(ac.ell);
  if (ac.k_max != ctx.s) throw std::invalid_argument("C_l(j) needs the full coefficient list");
  const std::int64_t P = through_q(depth);
  auto acc = QSeries<IntegerRing>::monomial(Z, 0, ac.c[0], P);
  if (ctx.s == 0) return acc;
  const auto j = j_invariant(P + kUnit * (ctx.s - 1), Z);
  auto jk = j;
  for (std::int64_t k = 1; k <= ctx.s; ++k) {
    if (k > 1) jk = mul(jk, j);
    acc = add(acc, scale(jk, ac.c[static_cast<std::size_t>(k)]));
  }
  return acc.truncated(P);
}

namespace detail {

/// f * eta^{l^2} = f * eta * Delta^s, where f starts at exponent -24s - 1 or later; known through q^depth.
template <class Ring>
QSeries<Ring> times_eta_ell2(const QSeries<Ring>& f, const PrimeContext& ctx, std::int64_t depth) {
  const std::int64_t P = through_q(depth);
  const auto eta = eta_power(1, ctx.ell * ctx.ell, P - f.min_exp(), f.ring());
  return mul(f, eta).truncated(P);
}

inline nlohmann::ordered_json ell_params(std::int64_t ell) { return {{"ell", ell}}; }

}  // namespace detail

/// Z_l eta = C_l(j), exactly, through q^depth.
inline Report verify_Z_identity(std::int64_t ell, std::int64_t depth) {
  Stopwatch sw;
  const auto ctx = prime_context(ell);
  const IntegerRing Z;
  const auto Zs = combo_series(ComboKind::Z, ctx, depth, Z);
  const std::int64_t P = through_q(depth);
  const auto lhs = mul(Zs, eta_power(1, 1, P - Zs.min_exp(), Z)).truncated(P);
  const auto rhs = atkin_polynomial_in_j(atkin_coeffs(ell, ctx.s), depth);
  auto r = check_identity(lhs, rhs, std::nullopt, depth, "ono-z");
  r.params = detail::ell_params(ell);
  r.seconds = sw.seconds();
  return r;
}

struct BasisDecomposition {
  std::vector<mpz_class> b;  // b[n-1] = b_n, 1 <= n <= s
  QSeries<IntegerRing> remainder;
};

/// Monic triangular elimination against E4^{3n-1} E6 Delta^{s-n}, n = s down to 1.
inline BasisDecomposition decompose_basis(const QSeries<IntegerRing>& F, std::int64_t s) {
  if (s < 1) throw std::invalid_argument("basis size must be positive");
  if (!F.has_integral_exponents() || (F.size() > 0 && F.min_exp() < 0))
    throw std::invalid_argument("decompose_basis needs a power series in integral powers of q");
  if (F.precision() <= kUnit * (s - 1)) throw precision_error("series too short to reach the last pivot");
  const IntegerRing Z;
  BasisDecomposition out{std::vector<mpz_class>(static_cast<std::size_t>(s)), F};
  for (std::int64_t n = s; n >= 1; --n) {
    const std::int64_t pivot = kUnit * (s - n);
    const mpz_class coef = out.remainder.coeff_at(pivot);
    out.b[static_cast<std::size_t>(n - 1)] = coef;
    if (sgn(coef) != 0) out.remainder = sub(out.remainder, scale(basis_element(n, s, F.precision(), Z), coef));
  }
  return out;
}

/// l A_l eta Delta^s, known through q^depth (depth >= s).
inline QSeries<IntegerRing> scaled_A_form(std::int64_t ell, std::int64_t depth) {
  const auto ctx = prime_context(ell);
  if (depth < ctx.s) throw std::invalid_argument("depth must reach s_l");
  const IntegerRing Z;
  const auto A = combo_series(ComboKind::A, ctx, depth - ctx.s, Z);
  return scale(detail::times_eta_ell2(A, ctx, depth), ell);
}

/// The weight 2 + 12s form decomposes with zero remainder through q^depth.
inline Report decomposition_check(std::int64_t ell, std::int64_t depth, BasisDecomposition* out = nullptr) {
  Stopwatch sw;
  const auto ctx = prime_context(ell);
  auto dec = decompose_basis(scaled_A_form(ell, depth), ctx.s);
  auto r = check_identity(dec.remainder, QSeries<IntegerRing>::zero(IntegerRing{}, dec.remainder.precision()),
                          std::nullopt, depth, "decomp");
  r.params = detail::ell_params(ell);
  nlohmann::ordered_json bs = nlohmann::ordered_json::array();
  for (const auto& b : dec.b) bs.push_back(detail::integer_json(b));
  r.params["b"] = bs;
  if (out) *out = std::move(dec);
  r.seconds = sw.seconds();
  return r;
}

/// Scale of the E2 Delta^s term on the right of the Xi identity.
enum class E2TermScale {
  ell_one_plus_ell,  // chi12(l) l (1 + l)
  one_plus_ell,      // chi12(l) (1 + l)
};

/// -sum_{n=0}^{s} c_n E4^{3n-1} Delta^{s-n} (24 n E6 + E4 E2) + chi12(l) k E2 Delta^s, through q^depth.
inline QSeries<IntegerRing> xi_identity_rhs(std::int64_t ell, std::int64_t depth, E2TermScale scale_kind) {
  const auto ctx = prime_context(ell);
  const auto ac = atkin_coeffs(ell, ctx.s);
  const IntegerRing Z;
  const std::int64_t P = through_q(depth);
  const auto e2 = eisenstein(2, P, Z);
  const auto e4 = eisenstein(4, P, Z);
  const auto e6 = eisenstein(6, P, Z);
  const auto e4e2 = mul(e4, e2);
  auto acc = QSeries<IntegerRing>::zero(Z, P);
  for (std::int64_t n = 0; n <= ctx.s; ++n) {
    const auto inner = add(scale(e6, 24 * n), e4e2);
    auto term = mul(mul(pow(e4, 3 * n - 1), eta_power(1, 24 * (ctx.s - n), P, Z)), inner);
    acc = sub(acc, scale(term, ac.c[static_cast<std::size_t>(n)]));
  }
  const std::int64_t k = scale_kind == E2TermScale::ell_one_plus_ell ? ctx.ell * (1 + ctx.ell) : 1 + ctx.ell;
  acc = add(acc, scale(mul(e2, eta_power(1, 24 * ctx.s, P, Z)), ctx.eps * k));
  return acc.truncated(P);
}

/// l Xi_l eta Delta^s against the Eisenstein/Atkin expression, exactly.
inline Report xi_identity_check(std::int64_t ell, std::int64_t depth,
                                E2TermScale scale_kind = E2TermScale::ell_one_plus_ell) {
  Stopwatch sw;
  const auto ctx = prime_context(ell);
  if (depth < ctx.s) throw std::invalid_argument("depth must reach s_l");
  const IntegerRing Z;
  const auto Xi = combo_series(ComboKind::Xi, ctx, depth - ctx.s, Z);
  const auto lhs = scale(detail::times_eta_ell2(Xi, ctx, depth), ell);
  auto r = check_identity(lhs, xi_identity_rhs(ell, depth, scale_kind), std::nullopt, depth, "xi-id");
  r.params = detail::ell_params(ell);
  r.params["e2_term"] = scale_kind == E2TermScale::ell_one_plus_ell ? "l(1+l)" : "(1+l)";
  r.seconds = sw.seconds();
  return r;
}

/// 12 l S_l eta Delta^s = (32 c1 + 64 c3) Delta^{s+1} + 64 c2 Delta^{s+2} + 64 c1 Delta^{s+3} mod 128.
inline Report s_congruence_check(std::int64_t ell, std::int64_t depth) {
  Stopwatch sw;
  const auto ctx = prime_context(ell);
  if (depth < ctx.s) throw std::invalid_argument("depth must reach s_l");
  const ResidueRing R(128);
  const auto S = combo_series(ComboKind::S, ctx, depth - ctx.s, R);
  const auto lhs = scale(detail::times_eta_ell2(S, ctx, depth), 12 * ell);
  const auto ac = atkin_coeffs(ell, std::min<std::int64_t>(3, ctx.s));
  const auto c1 = R.from_mpz(ac.coefficient(1, ctx.s));
  const auto c2 = R.from_mpz(ac.coefficient(2, ctx.s));
  const auto c3 = R.from_mpz(ac.coefficient(3, ctx.s));
  const std::int64_t P = through_q(depth);
  auto rhs = scale(eta_power(1, 24 * (ctx.s + 1), P, R), R.add(R.mul(32, c1), R.mul(64, c3)));
  rhs = add(rhs, scale(eta_power(1, 24 * (ctx.s + 2), P, R), R.mul(64, c2)));
  rhs = add(rhs, scale(eta_power(1, 24 * (ctx.s + 3), P, R), R.mul(64, c1)));
  auto r = check_identity(lhs, rhs, std::nullopt, depth, "s-cong");
  r.params = detail::ell_params(ell);
  r.seconds = sw.seconds();
  return r;
}

/// Number of (k, m), m >= 1, with (3k^2 - k)/2 + (2m - 1)^2 = n.
inline std::int64_t theta_count_c1(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t m = 1; (2 * m - 1) * (2 * m - 1) <= n; ++m) {
    const std::int64_t r = n - (2 * m - 1) * (2 * m - 1);
    for (std::int64_t k = -n - 1; k <= n + 1; ++k)
      if ((3 * k * k - k) / 2 == r) ++count;
  }
  return count;
}

/// Number of (k, m), m >= 0, with (3k^2 - k)/2 + 8m^2 + 8m + 2 = n.
inline std::int64_t theta_count_c2(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t m = 0; 8 * m * m + 8 * m + 2 <= n; ++m) {
    const std::int64_t r = n - (8 * m * m + 8 * m + 2);
    for (std::int64_t k = -n - 1; k <= n + 1; ++k)
      if ((3 * k * k - k) / 2 == r) ++count;
  }
  return count;
}

/// Parities of c_1, c_2 and c_1 + 2c_3 with the independent routes to each.
struct PropositionParity {
  std::int64_t ell = 5;
  int c1_mod2 = 0, c2_mod2 = 0, c1_2c3_mod4 = 0;
  int series_c1_mod2 = 0;       // [q^s] (q;q) Delta mod 2
  int theta_c1_mod2 = 0;        // pentagonal x odd-square count
  int series_c2_mod2 = 0;       // [q^s] (q;q) Delta^2 mod 2
  int theta_c2_mod2 = 0;        // pentagonal x q^2 (q^16;q^16)^3 count
  int series_c1_2c3_mod4 = 0;   // [q^s] ((q;q) Delta + 2 (q;q) Delta^3) mod 4
  bool prop1_solution = false;  // l^2 = (6k-1)^2 + 6(4m-2)^2 solvable
  bool prop2_solution = false;  // l^2 = (6k-1)^2 + 3(8m+4)^2 solvable

  bool consistent() const {
    return c1_mod2 == series_c1_mod2 && c1_mod2 == theta_c1_mod2 && c2_mod2 == series_c2_mod2 &&
           c2_mod2 == theta_c2_mod2 && c1_2c3_mod4 == series_c1_2c3_mod4 && prop1_solution == (theta_c1_mod2 == 1) &&
           prop2_solution == (theta_c2_mod2 == 1);
  }
};

/// Residue classes mod 24 on which each parity statement is claimed.
inline bool claims_c1_even(std::int64_t ell) {
  const auto r = ell % 24;
  return r == 1 || r == 11 || r == 13 || r == 17 || r == 19 || r == 23;
}
inline bool claims_c2_even(std::int64_t ell) {
  const auto r = ell % 24;
  return r == 1 || r == 5 || r == 11 || r == 17 || r == 19 || r == 23;
}
inline bool claims_c1_2c3_zero_mod4(std::int64_t ell) {
  const auto r = ell % 24;
  return r == 1 || r == 11 || r == 17 || r == 19;
}

inline PropositionParity proposition_parity(std::int64_t ell) {
  const auto ctx = prime_context(ell);
  const auto ac = atkin_coeffs(ell, std::min<std::int64_t>(3, ctx.s));
  auto mod = [](const mpz_class& v, unsigned long m) { return static_cast<int>(mpz_fdiv_ui(v.get_mpz_t(), m)); };
  PropositionParity out;
  out.ell = ell;
  const mpz_class c1 = ac.coefficient(1, ctx.s), c2 = ac.coefficient(2, ctx.s), c3 = ac.coefficient(3, ctx.s);
  out.c1_mod2 = mod(c1, 2);
  out.c2_mod2 = mod(c2, 2);
  out.c1_2c3_mod4 = mod(c1 + 2 * c3, 4);

  const ResidueRing R4(4);
  const std::int64_t P = through_q(ctx.s);
  const auto e = euler_product(P, R4);
  const auto x1 = mul(e, eta_power(1, 24, P, R4));
  const auto x3 = mul(e, eta_power(1, 72, P, R4));
  out.series_c1_mod2 = static_cast<int>(x1.coeff_q(ctx.s) % 2);
  out.series_c2_mod2 = static_cast<int>(mul(e, eta_power(1, 48, P, R4)).coeff_q(ctx.s) % 2);
  out.series_c1_2c3_mod4 = static_cast<int>(R4.add(x1.coeff_q(ctx.s), R4.mul(2, x3.coeff_q(ctx.s))));
  out.theta_c1_mod2 = static_cast<int>(theta_count_c1(ctx.s) % 2);
  out.theta_c2_mod2 = static_cast<int>(theta_count_c2(ctx.s) % 2);
  out.prop1_solution = prop_solution_exists(ell, PropEquation::prop1);
  out.prop2_solution = prop_solution_exists(ell, PropEquation::prop2);
  return out;
}

}  // namespace sptlab
