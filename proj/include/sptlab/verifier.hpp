#pragma once

// Declarative congruences over spt / p / d / a tables, the registry of named
// identity checks, and a deterministic parallel suite runner.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sptlab/atkin.hpp"
#include "sptlab/errors.hpp"
#include "sptlab/forms.hpp"
#include "sptlab/hecke.hpp"
#include "sptlab/partitions.hpp"
#include "sptlab/report.hpp"
#include "sptlab/ring.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

enum class TableFunc { spt, p, d, a };

inline const char* to_string(TableFunc f) {
  switch (f) {
    case TableFunc::spt: return "spt";
    case TableFunc::p: return "p";
    case TableFunc::d: return "d";
    case TableFunc::a: return "a";
  }
  return "?";
}

/// coefficient * func((u n + v) / w); the term is 0 when w does not divide u n + v.
/// coefficient = constant * l^ell_power * chi12(l)^chi_power * ((1 - 24n)/l if jacobi).
struct CongruenceTerm {
  TableFunc func = TableFunc::spt;
  std::int64_t u = 1, v = 0, w = 1;
  std::int64_t constant = 1;
  int ell_power = 0;
  int chi_power = 0;
  bool jacobi = false;
};

struct CongruenceSpec {
  std::string name;
  std::vector<CongruenceTerm> terms;
  std::uint64_t modulus = 2;
  std::int64_t n0 = 1, N = 1;
  std::optional<std::int64_t> ell;

  /// Largest table index any term reads over the range.
  std::int64_t max_argument() const {
    std::int64_t m = 0;
    for (const auto& t : terms)
      for (const std::int64_t n : {n0, N}) {
        const std::int64_t x = t.u * n + t.v;
        if (x >= 0) m = std::max(m, x / t.w);
      }
    return m;
  }
};

/// Largest table eval_congruence will build before reporting `skipped`.
inline constexpr std::int64_t kDefaultTableLimit = 4'000'000;

/// Sum of the terms modulo the modulus for each n in range; pass iff every sum is 0.
inline Report eval_congruence(const CongruenceSpec& spec, std::int64_t table_limit = kDefaultTableLimit) {
  Stopwatch sw;
  Report r;
  r.check = spec.name;
  r.modulus = spec.modulus;
  r.depth = spec.N;
  if (spec.ell) r.params["ell"] = *spec.ell;
  r.params["n"] = {spec.n0, spec.N};
  const std::int64_t M = std::max<std::int64_t>(spec.max_argument(), 1);
  if (M > table_limit) {
    r.status = Status::skipped;
    r.params["reason"] = "tables to " + std::to_string(M) + " exceed limit " + std::to_string(table_limit);
    r.seconds = sw.seconds();
    return r;
  }
  const std::int64_t ell = spec.ell.value_or(1);
  const int eps = spec.ell ? chi12(ell) : 1;
  for (const auto& t : spec.terms)
    if ((t.ell_power != 0 || t.chi_power != 0 || t.jacobi) && !spec.ell)
      throw std::invalid_argument(spec.name + ": l-dependent coefficient without l");

  const ResidueRing R(spec.modulus);
  bool need_p = false, need_spt = false;
  for (const auto& t : spec.terms) {
    need_p = need_p || t.func != TableFunc::spt;
    need_spt = need_spt || t.func == TableFunc::spt || t.func == TableFunc::a;
  }
  std::optional<PartitionTable<ResidueRing>> p;
  std::optional<SptTable<ResidueRing>> spt;
  std::optional<MockTables<ResidueRing>> mock;
  if (need_p) p = partition_table(M, R);
  if (need_spt) spt = spt_table(M, R);
  if (need_p && need_spt) mock = mock_tables(*p, *spt);
  auto lookup = [&](TableFunc f, std::int64_t k) -> std::uint64_t {
    switch (f) {
      case TableFunc::spt: return spt->at(k);
      case TableFunc::p: return p->at(k);
      case TableFunc::d: return R.mul_int(p->at(k), 24 * k - 1);
      case TableFunc::a: return mock->a.at(k);
    }
    return 0;
  };
  std::vector<std::uint64_t> coeff_base;
  for (const auto& t : spec.terms) {
    auto c = R.from_int(t.constant);
    for (int i = 0; i < t.ell_power; ++i) c = R.mul_int(c, ell);
    if (t.chi_power % 2 != 0 && eps < 0) c = R.neg(c);
    coeff_base.push_back(c);
  }
  for (std::int64_t n = spec.n0; n <= spec.N; ++n) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
      const auto& t = spec.terms[i];
      const std::int64_t x = t.u * n + t.v;
      if (x < 0 || x % t.w != 0) continue;
      auto c = coeff_base[i];
      if (t.jacobi) {
        const int j = kronecker(1 - 24 * n, ell);
        if (j == 0) continue;
        if (j < 0) c = R.neg(c);
      }
      sum = R.add(sum, R.mul(c, lookup(t.func, x / t.w)));
    }
    if (sum != 0) {
      r.status = Status::fail;
      r.first_failure = FirstFailure{n, mpz_class(static_cast<unsigned long>(sum))};
      break;
    }
  }
  r.seconds = sw.seconds();
  return r;
}

/// func(l^2 n - s) + chi (1-24n / l) func(n) + l func((n+s)/l^2) - chi (1+l) func(n), n >= 1.
inline CongruenceSpec ell_congruence_spec(std::string name, std::int64_t ell, std::int64_t N, std::uint64_t modulus,
                                          TableFunc f = TableFunc::spt) {
  const auto ctx = prime_context(ell);
  CongruenceSpec s;
  s.name = std::move(name);
  s.ell = ell;
  s.modulus = modulus;
  s.n0 = 1;
  s.N = N;
  s.terms = {
      {f, ctx.ell * ctx.ell, -ctx.s, 1, 1, 0, 0, false},
      {f, 1, 0, 1, 1, 0, 1, true},
      {f, 1, ctx.s, ctx.ell * ctx.ell, 1, 1, 0, false},
      {f, 1, 0, 1, -1, 0, 1, false},
      {f, 1, 0, 1, -1, 1, 1, false},
  };
  return s;
}

/// The 2-power congruence, modulus 2^beta.
inline CongruenceSpec main_congruence_spec(std::int64_t ell, std::int64_t N) {
  const auto ctx = prime_context(ell);
  auto s = ell_congruence_spec("main", ell, N, std::uint64_t{1} << ctx.beta);
  return s;
}

/// Product of the t in {5, 7, 13} different from l: all three prime congruences at once.
inline std::uint64_t prime_product_modulus(std::int64_t ell) {
  std::uint64_t m = 1;
  for (const std::uint64_t t : {5u, 7u, 13u})
    if (static_cast<std::int64_t>(t) != ell) m *= t;
  return m;
}

/// spt(t n + r) = 0 mod t for all arguments up to max_arg; (t, r) in (5,4), (7,5), (13,6).
inline CongruenceSpec andrews_spec(std::int64_t t, std::int64_t max_arg) {
  std::int64_t r;
  switch (t) {
    case 5: r = 4; break;
    case 7: r = 5; break;
    case 13: r = 6; break;
    default: throw std::invalid_argument("no such congruence for t=" + std::to_string(t));
  }
  CongruenceSpec s;
  s.name = "andrews";
  s.modulus = static_cast<std::uint64_t>(t);
  s.n0 = 0;
  s.N = (max_arg - r) / t;
  s.terms = {{TableFunc::spt, t, r, 1}};
  return s;
}

namespace detail {

inline std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Least nonnegative inverse of 24 mod m.
inline std::int64_t inverse_of_24(std::int64_t m) {
  for (std::int64_t x = 0; x < m; ++x)
    if ((24 * x) % m == 1) return x;
  throw std::invalid_argument("24 is not invertible mod " + std::to_string(m));
}

}  // namespace detail

/// spt(p^a n + d_a) + sign p spt(p^{a-2} n + d_{a-2}) = 0 with d_k = 24^{-1} mod p^k, n in [0, N].
/// p = 5: sign +, modulus 5^{2a-3}; p = 7: sign +, 7^{floor((3a-2)/2)}; p = 13: sign -, 13^{a-1}.
inline CongruenceSpec family_spec(std::int64_t p, std::int64_t a, std::int64_t N) {
  if (a < 3) throw std::invalid_argument("family exponent must be >= 3");
  std::int64_t sign, mexp;
  switch (p) {
    case 5: sign = 1; mexp = 2 * a - 3; break;
    case 7: sign = 1; mexp = (3 * a - 2) / 2; break;
    case 13: sign = -1; mexp = a - 1; break;
    default: throw std::invalid_argument("no family for p=" + std::to_string(p));
  }
  const std::int64_t pa = detail::ipow(p, a), pa2 = detail::ipow(p, a - 2);
  CongruenceSpec s;
  s.name = "family" + std::to_string(p);
  s.modulus = static_cast<std::uint64_t>(detail::ipow(p, mexp));
  s.n0 = 0;
  s.N = N;
  s.terms = {{TableFunc::spt, pa, detail::inverse_of_24(pa), 1},
             {TableFunc::spt, pa2, detail::inverse_of_24(pa2), 1, sign * p}};
  return s;
}

enum class DepthScale { smoke, full };

inline const char* to_string(DepthScale d) { return d == DepthScale::smoke ? "smoke" : "full"; }

inline constexpr std::int64_t kSmokeDepth = 200;

inline std::int64_t scaled_depth(std::int64_t full, DepthScale scale) {
  return scale == DepthScale::smoke ? std::min(kSmokeDepth, full) : full;
}

/// Sturm depth of a named check, cross-checked against sturm_bound(weight, level).
inline std::int64_t sturm_depth(const std::string& check) {
  struct Entry {
    const char* name;
    std::int64_t depth, weight, level;
  };
  static const Entry table[] = {
      {"e4-mod128", 2064, 258, 64},
      {"e2-mod128", 2064, 258, 64},
      {"w24-lift", 576, 24, 144},
      {"w72-lift", 1728, 72, 144},
      {"p-of-h", 6912, 72, 576},
  };
  for (const auto& e : table) {
    if (check != e.name) continue;
    const auto b = sturm_bound(e.weight, e.level);
    if (b != e.depth)
      throw std::logic_error(check + ": tabulated depth " + std::to_string(e.depth) + " != Sturm bound " +
                             std::to_string(b));
    return e.depth;
  }
  throw std::invalid_argument("no Sturm depth for " + check);
}

namespace detail {

/// sum_{n >= 0} B(n) q^n with B(0) = 0, from a lift map starting at 1.
template <class Ring>
QSeries<Ring> lift_to_series(const CoeffMap<Ring>& B, std::int64_t depth) {
  return QSeries<Ring>::generate(B.ring, 0, kUnit, through_q(depth), [&](std::int64_t e) {
    const std::int64_t n = e / kUnit;
    return n == 0 ? B.ring.zero() : B.at(n);
  });
}

/// B(n) = 0 unless gcd(n, 6) = 1; returns the first violating n.
template <class Ring>
std::optional<std::int64_t> lift_support_violation(const CoeffMap<Ring>& B) {
  for (std::int64_t n = B.first; n <= B.last(); ++n)
    if ((n % 2 == 0 || n % 3 == 0) && !B.ring.is_zero(B.at(n))) return n;
  return std::nullopt;
}

inline const EtaQuotient& w24_plus() {
  static const EtaQuotient q{{2, 12}, {3, 24}, {6, 12}};
  return q;
}
inline const EtaQuotient& w24_minus() {
  static const EtaQuotient q{{2, 24}, {3, 24}};
  return q;
}

/// The seven weight-72 quotients, each entering with coefficient 2.
inline const std::vector<EtaQuotient>& w72_terms() {
  static const std::vector<EtaQuotient> t{
      {{1, 2}, {2, 2}, {3, 10}, {6, 130}},  {{1, 1}, {2, 7}, {3, 5}, {6, 131}},
      {{1, 1}, {2, -5}, {3, 5}, {6, 143}},  {{1, -19}, {2, -1}, {3, 25}, {6, 139}},
      {{2, 24}, {3, 120}},                  {{1, -31}, {2, -1}, {3, 37}, {6, 139}},
      {{2, 132}, {3, 24}, {6, -12}},
  };
  return t;
}

template <class Ring>
Report lift_check(const std::string& name, const QSeries<Ring>& g, const LiftSpec& spec, const QSeries<Ring>& rhs,
                  std::int64_t depth) {
  const auto B = shimura_lift(g, spec, depth);
  if (const auto bad = lift_support_violation(B)) {
    Report r;
    r.check = name;
    r.depth = depth;
    r.modulus = g.ring().modulus();
    r.status = Status::fail;
    r.params["support"] = "violated";
    r.first_failure = FirstFailure{kUnit * *bad, mpz_class(static_cast<unsigned long>(B.at(*bad)))};
    return r;
  }
  return check_identity(lift_to_series(B, depth), rhs, std::nullopt, depth, name);
}

}  // namespace detail

/// E4^8 = 1 mod 128.
inline Report e4_mod128_check(std::int64_t depth) {
  const ResidueRing R(128);
  const std::int64_t P = through_q(depth);
  return check_identity(pow(eisenstein(4, P, R), 8), QSeries<ResidueRing>::one(R, P), std::nullopt, depth,
                        "e4-mod128");
}

/// E2 = E4^7 E6 + 80 Delta + 32 Delta^2 + 64 Delta^4 mod 128.
inline Report e2_mod128_check(std::int64_t depth) {
  const ResidueRing R(128);
  const std::int64_t P = through_q(depth);
  auto rhs = mul(pow(eisenstein(4, P, R), 7), eisenstein(6, P, R));
  rhs = add(rhs, scale(delta(P, R), 80));
  rhs = add(rhs, scale(eta_power(1, 48, P, R), 32));
  rhs = add(rhs, scale(eta_power(1, 96, P, R), 64));
  return check_identity(eisenstein(2, P, R), rhs, std::nullopt, depth, "e2-mod128");
}

/// Lift of eta(24z)^25 (lambda 12) against the two twisted weight-24 quotients, mod 4.
inline Report w24_lift_check(std::int64_t depth) {
  const ResidueRing R(4);
  const auto chi = DirichletCharacter::chi12();
  const auto g = eta_power(24, 25, kUnit * depth * depth + 1, R);
  const std::int64_t P = through_q(depth);
  const auto rhs = sub(twist(eta_quotient(detail::w24_plus(), P, R), chi),
                       twist(eta_quotient(detail::w24_minus(), P, R), chi));
  return detail::lift_check("w24-lift", g, LiftSpec{1, 12, chi}, rhs, depth);
}

/// Lift of 2 eta(24z)^73 (lambda 36) against the seven twisted weight-72 quotients, mod 4.
inline Report w72_lift_check(std::int64_t depth) {
  const ResidueRing R(4);
  const auto chi = DirichletCharacter::chi12();
  const auto g = scale(eta_power(24, 73, kUnit * depth * depth + 1, R), 2);
  const std::int64_t P = through_q(depth);
  auto rhs = QSeries<ResidueRing>::zero(R, P);
  for (const auto& q : detail::w72_terms()) rhs = add(rhs, scale(twist(eta_quotient(q, P, R), chi), 2));
  return detail::lift_check("w72-lift", g, LiftSpec{1, 36, chi}, rhs, depth);
}

/// h with its E4^12-weighted weight-24 tail, mod 4, to precision P.
inline QSeries<ResidueRing> h_series(std::int64_t P) {
  const ResidueRing R(4);
  auto h = QSeries<ResidueRing>::zero(R, P);
  for (const auto& q : detail::w72_terms()) h = add(h, scale(eta_quotient(q, P, R), 2));
  const auto e4_12 = pow(eisenstein(4, P, R), 12);
  h = add(h, mul(e4_12, eta_quotient(detail::w24_plus(), P, R)));
  h = sub(h, mul(e4_12, eta_quotient(detail::w24_minus(), P, R)));
  return h;
}

/// P(h) = 0 mod 4, P keeping exponents 1, 11, 17, 19 mod 24.
inline Report p_of_h_check(std::int64_t depth) {
  const std::int64_t P = through_q(depth);
  const auto ph = project_residues(h_series(P), projection_residues(), 24);
  return check_identity(ph, QSeries<ResidueRing>::zero(ph.ring(), P), std::nullopt, depth, "p-of-h");
}

/// sum d(n) q^{24n-1} against q d/dq (1/eta(24z)) and -E2(24z)/eta(24z), exactly, through q^depth.
inline Report d_series_check(std::int64_t depth) {
  Stopwatch sw;
  const IntegerRing Z;
  const std::int64_t P = through_q(depth);
  const std::int64_t N = (depth + 1) / 24 + 1;
  const auto d = rescale(build_series(NamedTableSeries::d_series, N, Z), 24).truncated(P);
  const auto inv_eta = eta_power(24, -1, P, Z);
  auto r = check_identity(d, qderiv(inv_eta), std::nullopt, depth, "d-series");
  if (r.passed()) {
    const auto other = neg(mul(eisenstein(2, P + kUnit, Z, 24), inv_eta)).truncated(P);
    r = check_identity(d, other, std::nullopt, depth, "d-series");
    r.params["against"] = "-E2(24z)/eta(24z)";
  } else {
    r.params["against"] = "q d/dq 1/eta(24z)";
  }
  r.seconds = sw.seconds();
  return r;
}

/// A_l from tables against the Hecke image of alpha(24z), exactly, n in [-s, N].
inline Report hecke_alpha_check(std::int64_t ell, std::int64_t N) {
  Stopwatch sw;
  const auto ctx = prime_context(ell);
  const IntegerRing Z;
  const auto tables = make_tables(ctx.ell * ctx.ell * N, Z, {ComboKind::A});
  const auto A = combo_series(ComboKind::A, ctx, N, tables);
  const auto image = hecke_alpha_image(ctx, N, tables);
  // image index m is the 1/24-unit exponent 24n - 1 of A
  auto lhs = QSeries<IntegerRing>::generate(Z, image.first, 1, image.last() + 1, [&](std::int64_t m) {
    return (m + 1) % kUnit == 0 ? A.coeff_at(m) : Z.zero();
  });
  auto rhs = QSeries<IntegerRing>::generate(Z, image.first, 1, image.last() + 1,
                                            [&](std::int64_t m) { return image.at(m); });
  Report r;
  r.check = "hecke-a";
  r.depth = N;
  r.params = detail::ell_params(ell);
  if (const auto e = first_mismatch(lhs, rhs, image.last() + 1))
    r.first_failure = FirstFailure{*e, lhs.coeff_at(*e) - rhs.coeff_at(*e)};
  r.status = r.first_failure ? Status::fail : Status::pass;
  r.seconds = sw.seconds();
  return r;
}

/// Parity classes for every prime 5 <= l <= l_max, against the stated classes and the
/// theta / BQF routes. The failure index is the first offending l.
inline Report props_check(std::int64_t ell_max) {
  Stopwatch sw;
  Report r;
  r.check = "props";
  r.depth = ell_max;
  r.params["ell_max"] = ell_max;
  nlohmann::ordered_json odd_c1 = nlohmann::ordered_json::array();
  for (std::int64_t ell = 5; ell <= ell_max; ++ell) {
    if (!is_prime(ell)) continue;
    const auto pp = proposition_parity(ell);
    if (pp.c1_mod2 == 1) odd_c1.push_back(ell);
    bool ok = pp.consistent();
    ok = ok && (!claims_c1_even(ell) || pp.c1_mod2 == 0);
    ok = ok && (!claims_c2_even(ell) || pp.c2_mod2 == 0);
    ok = ok && (!claims_c1_2c3_zero_mod4(ell) || pp.c1_2c3_mod4 == 0);
    if (!ok && !r.first_failure)
      r.first_failure = FirstFailure{ell, mpz_class(pp.c1_mod2 + 2 * pp.c2_mod2 + 4 * pp.c1_2c3_mod4)};
  }
  r.params["odd_c1"] = odd_c1;
  r.status = r.first_failure ? Status::fail : Status::pass;
  r.seconds = sw.seconds();
  return r;
}

/// One resolved check: family name plus its integer parameter.
struct CheckRequest {
  std::string family;
  std::optional<std::int64_t> arg;

  std::string name() const { return arg ? family + ":" + std::to_string(*arg) : family; }
};

struct CheckOptions {
  DepthScale scale = DepthScale::full;
  std::optional<std::int64_t> n_max;  // congruence range override
};

namespace detail {

inline std::int64_t need_ell(const CheckRequest& req) {
  if (!req.arg) throw std::invalid_argument(req.family + " needs a prime parameter");
  return *req.arg;
}

}  // namespace detail

/// Families that take a prime l as parameter.
inline const std::vector<std::string>& per_ell_families() {
  static const std::vector<std::string> f{"ono-z", "xi-id", "s-cong", "decomp", "hecke-a",
                                          "main", "mod3", "mod72", "mod-t"};
  return f;
}

/// Every family name, in registry order.
inline const std::vector<std::string>& check_families() {
  static const std::vector<std::string> f{"e4-mod128", "e2-mod128", "w24-lift", "w72-lift", "p-of-h", "d-series",
                                          "ono-z",     "xi-id",     "s-cong",   "decomp",   "hecke-a", "main",
                                          "mod3",      "mod72",  "mod-t", "props",    "andrews", "family5",
                                          "family7",   "family13"};
  return f;
}

/// Parameters used when a family is selected without one.
inline std::vector<std::int64_t> default_args(const std::string& family) {
  const auto& pe = per_ell_families();
  if (std::find(pe.begin(), pe.end(), family) != pe.end()) {
    if (family == "ono-z" || family == "decomp") return {5, 7, 11, 13};
    if (family == "xi-id") return {5, 7, 11};
    if (family == "s-cong") return {5, 7, 13};
    if (family == "hecke-a") return {5, 7};
    return {5, 7, 11, 13, 17, 19, 23};
  }
  if (family == "props") return {97};
  if (family == "andrews") return {5, 7, 13};
  if (family == "family5" || family == "family7" || family == "family13") return {3};
  return {};
}

inline bool is_known_family(const std::string& family) {
  const auto& f = check_families();
  return std::find(f.begin(), f.end(), family) != f.end();
}

/// Runs one check. Table or precision shortfalls come back as `skipped`.
inline Report run_named_check(const CheckRequest& req, const CheckOptions& opt = {}) {
  const auto& f = req.family;
  if (!is_known_family(f)) throw std::invalid_argument("unknown check: " + f);
  Stopwatch sw;
  auto finish = [&](Report r) {
    r.check = req.name();
    r.seconds = sw.seconds();
    return r;
  };
  try {
    if (f == "e4-mod128") return finish(e4_mod128_check(scaled_depth(sturm_depth(f), opt.scale)));
    if (f == "e2-mod128") return finish(e2_mod128_check(scaled_depth(sturm_depth(f), opt.scale)));
    if (f == "w24-lift") return finish(w24_lift_check(scaled_depth(sturm_depth(f), opt.scale)));
    if (f == "w72-lift") return finish(w72_lift_check(scaled_depth(sturm_depth(f), opt.scale)));
    if (f == "p-of-h") return finish(p_of_h_check(scaled_depth(sturm_depth(f), opt.scale)));
    if (f == "d-series") return finish(d_series_check(scaled_depth(24 * 1000, opt.scale)));
    if (f == "props") return finish(props_check(req.arg.value_or(97)));
    const std::int64_t n_max = opt.n_max.value_or(200);
    if (f == "andrews") return finish(eval_congruence(andrews_spec(req.arg.value_or(5), 2000)));
    if (f == "family5" || f == "family7" || f == "family13") {
      const std::int64_t p = std::stoll(f.substr(6));
      return finish(eval_congruence(family_spec(p, req.arg.value_or(3), opt.n_max.value_or(50))));
    }
    const std::int64_t ell = detail::need_ell(req);
    const auto ctx = prime_context(ell);
    if (f == "ono-z") return finish(verify_Z_identity(ell, scaled_depth(100, opt.scale)));
    if (f == "xi-id") return finish(xi_identity_check(ell, scaled_depth(ctx.s + 60, opt.scale)));
    if (f == "s-cong") return finish(s_congruence_check(ell, scaled_depth(ctx.s + 60, opt.scale)));
    if (f == "decomp") return finish(decomposition_check(ell, scaled_depth(ctx.s + 60, opt.scale)));
    if (f == "hecke-a") return finish(hecke_alpha_check(ell, scaled_depth(50, opt.scale)));
    if (f == "main") return finish(eval_congruence(main_congruence_spec(ell, n_max)));
    if (f == "mod3") return finish(eval_congruence(ell_congruence_spec("mod3", ell, n_max, 3)));
    if (f == "mod72") return finish(eval_congruence(ell_congruence_spec("mod72", ell, n_max, 72)));
    if (f == "mod-t")
      return finish(eval_congruence(ell_congruence_spec("mod-t", ell, n_max, prime_product_modulus(ell))));
  } catch (const table_too_short& e) {
    Report r;
    r.status = Status::skipped;
    r.params["reason"] = e.what();
    return finish(r);
  } catch (const precision_error& e) {
    Report r;
    r.status = Status::skipped;
    r.params["reason"] = e.what();
    return finish(r);
  }
  throw std::logic_error("family registered without a runner: " + f);
}

/// Runs the checks on `threads` workers; reports come back in request order.
inline std::vector<Report> run_suite(const std::vector<CheckRequest>& requests, const CheckOptions& opt = {},
                                     unsigned threads = 1) {
  for (const auto& r : requests)
    if (!is_known_family(r.family)) throw std::invalid_argument("unknown check: " + r.family);
  std::vector<Report> out(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < requests.size();) {
      try {
        out[i] = run_named_check(requests[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(requests.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// 0 all pass, 1 any failure, 3 nothing failed but something was skipped.
inline int suite_exit_status(const std::vector<Report>& reports) {
  bool skipped = false;
  for (const auto& r : reports) {
    if (r.status == Status::fail) return 1;
    skipped = skipped || r.status == Status::skipped;
  }
  return skipped ? 3 : 0;
}

}  // namespace sptlab
