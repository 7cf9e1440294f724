#include <gtest/gtest.h>

#include "support.hpp"

using namespace sptlab;

namespace {

const IntegerRing kZ;

// c_k = [q^{s-k}] (q;q)^{1+24k} E6 / E4^{3k+1}, plus l chi12(l) on c_0, with literal products.
std::vector<mpz_class> naive_atkin(std::int64_t ell) {
  const std::int64_t s = (ell * ell - 1) / 24;
  const std::size_t L = static_cast<std::size_t>(s + 1);
  const auto e = oracle::euler(L);
  const auto e4 = oracle::eisenstein(4, L), e6 = oracle::eisenstein(6, L);
  std::vector<mpz_class> c;
  for (std::int64_t k = 0; k <= s; ++k) {
    const auto f = oracle::mul(oracle::mul(oracle::power(e, 1 + 24 * k), e6), oracle::power(e4, -(3 * k + 1)));
    c.push_back(f[static_cast<std::size_t>(s - k)]);
  }
  c[0] += ell * chi12(ell);
  return c;
}

std::vector<mpz_class> ints(std::initializer_list<const char*> xs) {
  std::vector<mpz_class> v;
  for (const char* x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(PrimeContext, Examples) {
  const auto c5 = prime_context(5);
  EXPECT_EQ(c5.s, 1);
  EXPECT_EQ(c5.eps, -1);
  EXPECT_EQ(c5.beta, 3);
  const auto c13 = prime_context(13);
  EXPECT_EQ(c13.s, 7);
  EXPECT_EQ(c13.eps, 1);
  EXPECT_EQ(c13.beta, 4);
  const auto c11 = prime_context(11);
  EXPECT_EQ(c11.s, 5);
  EXPECT_EQ(c11.eps, 1);  // 11 = -1 mod 12
  EXPECT_EQ(c11.beta, 5);
  EXPECT_EQ(prime_context(7).beta, 3);
  EXPECT_EQ(prime_context(23).beta, 4);
  EXPECT_EQ(prime_context(17).beta, 5);
  EXPECT_THROW(prime_context(3), std::invalid_argument);
  EXPECT_THROW(prime_context(25), std::invalid_argument);
  EXPECT_THROW(beta_for_residue(9), std::invalid_argument);
}

TEST(PrimeContext, BetaCoversEveryPrimeClass) {
  for (std::int64_t l = 5; l < 2000; ++l)
    if (is_prime(l)) EXPECT_NO_THROW(prime_context(l)) << l;
}

TEST(AtkinCoeffs, SmallPrimes) {
  EXPECT_EQ(atkin_coeffs(5, 1).c, ints({"-750", "1"}));
  const auto c7 = atkin_coeffs(7, 2);
  EXPECT_EQ(c7.c, ints({"160504", "-1489", "1"}));
  EXPECT_EQ(c7.coefficient(3, 2), 0);
  EXPECT_THROW(atkin_coeffs(7, 3), std::invalid_argument);
  EXPECT_THROW(atkin_coeffs(11, 2).coefficient(3, 5), std::out_of_range);
}

TEST(AtkinCoeffs, MatchLiteralProductOracle) {
  for (const std::int64_t l : {5, 7, 11, 13}) {
    const auto s = prime_context(l).s;
    EXPECT_EQ(atkin_coeffs(l, s).c, naive_atkin(l)) << l;
  }
  EXPECT_EQ(atkin_coeffs(11, 5).c,
            ints({"-1971682051548", "247243785602", "-2031082648", "4553915", "-3721", "1"}));
  EXPECT_EQ(atkin_coeffs(13, 7).c, ints({"-104996593133311498", "35089738412615282", "-721470585282643",
                                         "4084546595190", "-9444792416", "10250531", "-5209", "1"}));
}

TEST(Combos, ZLeadingTerm) {
  const auto z = combo_series(ComboKind::Z, prime_context(5), 10, kZ);
  EXPECT_EQ(z.leading_exponent(), std::optional<std::int64_t>(-25));
  EXPECT_EQ(z.coeff_at(-25), 1);
}

TEST(Combos, AIsTwelveSPlusXi) {
  for (const std::int64_t l : {5, 7}) {
    const auto ctx = prime_context(l);
    const auto t = make_tables(l * l * 50, kZ, {ComboKind::A, ComboKind::S, ComboKind::Xi});
    const auto A = combo_series(ComboKind::A, ctx, 50, t);
    const auto S = combo_series(ComboKind::S, ctx, 50, t);
    const auto Xi = combo_series(ComboKind::Xi, ctx, 50, t);
    EXPECT_TRUE(agree(A, add(scale(S, 12), Xi))) << l;
  }
}

TEST(Combos, SFiveVanishesModEight) {
  const auto S = combo_series(ComboKind::S, prime_context(5), 200, ResidueRing(8));
  EXPECT_TRUE(S.is_zero());
  EXPECT_FALSE(combo_series(ComboKind::S, prime_context(5), 200, ResidueRing(16)).is_zero());
}

TEST(Combos, ShortTablesThrow) {
  const auto t = make_tables(100, kZ, {ComboKind::S});
  EXPECT_THROW(combo_series(ComboKind::S, prime_context(5), 50, t), table_too_short);
  EXPECT_THROW(combo_series(ComboKind::Z, prime_context(5), 2, t), std::logic_error);
}

TEST(Combos, HeckeConstructionOfA) {
  for (const std::int64_t l : {5, 7}) {
    const auto ctx = prime_context(l);
    const std::int64_t N = 50;
    const auto t = make_tables(l * l * N, kZ, {ComboKind::A});
    const auto image = hecke_alpha_image(ctx, N, t);
    const auto A = combo_series(ComboKind::A, ctx, N, t);
    for (std::int64_t m = image.first; m <= image.last(); ++m) {
      const mpz_class want = (m + 1) % kUnit == 0 ? A.coeff_at(m) : mpz_class(0);
      ASSERT_EQ(image.at(m), want) << l << " at " << m;
    }
  }
}

TEST(Identities, OnoZ) {
  for (const std::int64_t l : {5, 7}) EXPECT_TRUE(verify_Z_identity(l, 100).passed()) << l;
  EXPECT_TRUE(verify_Z_identity(13, 60).passed());
}

TEST(Identities, XiWithCorrectedE2Term) {
  EXPECT_TRUE(xi_identity_check(5, 61).passed());
  EXPECT_TRUE(xi_identity_check(7, 62).passed());
  EXPECT_TRUE(xi_identity_check(11, 45).passed());
  const auto literal = xi_identity_check(5, 61, E2TermScale::one_plus_ell);
  EXPECT_FALSE(literal.passed());
  ASSERT_TRUE(literal.first_failure.has_value());
}

TEST(Identities, SCongruence) {
  for (const std::int64_t l : {5, 7}) EXPECT_TRUE(s_congruence_check(l, prime_context(l).s + 60).passed()) << l;
  EXPECT_TRUE(s_congruence_check(13, 47).passed());
}

TEST(Decomposition, TrivialInputs) {
  const std::int64_t P = through_q(40);
  const auto d = decompose_basis(basis_element(2, 3, P, kZ), 3);
  EXPECT_EQ(d.b, (std::vector<mpz_class>{0, 1, 0}));
  EXPECT_TRUE(d.remainder.is_zero());
  const auto deep = eta_power(1, 24 * 4, P, kZ);
  const auto d2 = decompose_basis(deep, 3);
  EXPECT_EQ(d2.b, (std::vector<mpz_class>{0, 0, 0}));
  EXPECT_TRUE(agree(d2.remainder, deep));
  EXPECT_THROW(decompose_basis(QSeries<IntegerRing>::monomial(kZ, 1, 1, P), 3), std::invalid_argument);
}

TEST(Decomposition, ScaledAFormIsInTheBasisSpan) {
  BasisDecomposition d5{{}, QSeries<IntegerRing>::zero(kZ, 0)};
  EXPECT_TRUE(decomposition_check(5, 61, &d5).passed());
  EXPECT_EQ(d5.b, (std::vector<mpz_class>{-25}));
  BasisDecomposition d7{{}, QSeries<IntegerRing>::zero(kZ, 0)};
  EXPECT_TRUE(decomposition_check(7, 62, &d7).passed());
  EXPECT_EQ(d7.b, (std::vector<mpz_class>{36505, -49}));
  BasisDecomposition d11{{}, QSeries<IntegerRing>::zero(kZ, 0)};
  EXPECT_TRUE(decomposition_check(11, 45, &d11).passed());
  EXPECT_EQ(d11.b, ints({"-5986679089490", "98334985672", "-330668195", "360217", "-121"}));
  EXPECT_TRUE(decomposition_check(13, 47).passed());
}

TEST(Parity, Examples) {
  EXPECT_EQ(proposition_parity(5).c1_mod2, 1);
  EXPECT_EQ(proposition_parity(13).c1_mod2, 0);
  EXPECT_EQ(proposition_parity(11).c1_2c3_mod4, 0);
}

TEST(Parity, ConsistentAndClaimsHoldThrough97) {
  std::vector<std::int64_t> odd;
  for (std::int64_t l = 5; l <= 97; ++l) {
    if (!is_prime(l)) continue;
    const auto p = proposition_parity(l);
    EXPECT_TRUE(p.consistent()) << l;
    if (claims_c1_even(l)) EXPECT_EQ(p.c1_mod2, 0) << l;
    if (claims_c2_even(l)) EXPECT_EQ(p.c2_mod2, 0) << l;
    if (claims_c1_2c3_zero_mod4(l)) EXPECT_EQ(p.c1_2c3_mod4, 0) << l;
    if (p.c1_mod2) odd.push_back(l);
  }
  EXPECT_EQ(odd, (std::vector<std::int64_t>{5, 7, 29, 31, 53, 79}));
}

TEST(Parity, ThetaProductModTwo) {
  // (q;q) Delta = pentagonal series times the odd-square series, mod 2
  const ResidueRing R(2);
  const std::int64_t P = through_q(1000);
  const auto lhs = mul(euler_product(P, R), eta_power(1, 24, P, R));
  for (std::int64_t n = 0; n <= 1000; ++n) ASSERT_EQ(lhs.coeff_q(n), static_cast<std::uint64_t>(theta_count_c1(n) % 2)) << n;
}
