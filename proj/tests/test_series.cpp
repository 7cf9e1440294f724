#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace sptlab;
using Z = QSeries<IntegerRing>;
using Zm = QSeries<ResidueRing>;

namespace {

const IntegerRing kZ;

/// c0 + c1 q + ... known below q^L.
Z poly(std::vector<long> c, std::int64_t L) {
  return Z::generate(kZ, 0, kUnit, kUnit * L, [&](std::int64_t e) {
    const auto n = static_cast<std::size_t>(e / kUnit);
    return mpz_class(n < c.size() ? c[n] : 0);
  });
}

void expect_agree(const Z& f, const Z& g) {
  const auto e = first_mismatch(f, g, std::min(f.precision(), g.precision()));
  EXPECT_FALSE(e.has_value()) << "mismatch at exponent " << *e;
}

}  // namespace

TEST(Ring, ResidueCanonicalRange) {
  const ResidueRing R(7);
  EXPECT_EQ(R.from_int(-1), 6u);
  EXPECT_EQ(R.from_int(14), 0u);
  EXPECT_EQ(R.from_mpz(mpz_class(-15)), 6u);
  EXPECT_THROW(ResidueRing(1), std::invalid_argument);
}

TEST(Ring, DescriptorRoundTrip) {
  EXPECT_EQ(CoeffRing::parse("Z").to_string(), "Z");
  EXPECT_EQ(CoeffRing::parse("Zmod:128").to_string(), "Zmod:128");
  EXPECT_THROW(CoeffRing::parse("Zmod:1"), std::invalid_argument);
}

TEST(Series, AddExamples) {
  const auto q = Z::monomial(kZ, 24, 1, 240);
  EXPECT_TRUE(add(q, neg(q)).is_zero());
  expect_agree(add(poly({1, 1}, 10), poly({1, 0, 1}, 10)), poly({2, 1, 1}, 10));
}

TEST(Series, AddPrecisionIsMinimum) {
  const auto s = add(poly({1, 2, 3}, 5), poly({1}, 3));
  EXPECT_EQ(s.precision(), 72);
  EXPECT_THROW(s.coeff_q(3), precision_error);
}

TEST(Series, MulExamplesAndPrecision) {
  expect_agree(mul(poly({1, 1}, 10), poly({1, -1}, 10)), poly({1, 0, -1}, 10));
  const auto f = shift(poly({1, 1}, 10), 24);  // q + q^2, known below q^11
  const auto g = poly({1, 3}, 5);
  EXPECT_EQ(mul(f, g).precision(), std::min(f.precision() + g.min_exp(), g.precision() + f.min_exp()));
  EXPECT_EQ(mul(f, g).min_exp(), 24);
}

TEST(Series, EulerTimesPartitionsIsOne) {
  const std::int64_t P = through_q(200);
  const auto p = partition_table(200, kZ);
  const auto ps = Z::generate(kZ, 0, kUnit, P, [&](std::int64_t e) { return p.at(e / kUnit); });
  expect_agree(mul(euler_product(P, kZ), ps), Z::one(kZ, P));
}

TEST(Series, SparseEtaTimesEtaCubeMatchesDensePower) {
  const std::int64_t P = through_q(500);
  const auto lhs = mul(eta_power(1, 1, P, kZ, EtaMethod::sparse_chain), eta_power(1, 3, P, kZ, EtaMethod::sparse_chain));
  const auto rhs = eta_power(1, 4, P, kZ, EtaMethod::square_multiply);
  expect_agree(lhs, rhs);
}

TEST(Series, DenseTimesSparseMatchesDense) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_series(60);
    const auto g = oracle::random_series(60);
    expect_agree(mul(f, SparseSeries<IntegerRing>::from(g)), mul(f, g));
  }
}

TEST(Series, InvertExamples) {
  expect_agree(invert(poly({1, -1}, 30)), poly(std::vector<long>(30, 1), 30));
  const auto p = partition_table(100, kZ);
  const auto inv = invert(euler_product(through_q(100), kZ));
  for (std::int64_t n = 0; n <= 100; ++n) EXPECT_EQ(inv.coeff_q(n), p.at(n));
  EXPECT_THROW(invert(poly({2, 1}, 5)), not_a_unit);
  EXPECT_EQ(invert(shift(poly({1, 5}, 5), 24)).min_exp(), -24);
}

TEST(Series, InvertUnitPartOfJMatchesReciprocal) {
  // j = q^{-1} (1 + 744 q + ...); invert gives 1/j = Delta / E4^3
  const std::int64_t P = through_q(50);
  const auto j = j_invariant(P, kZ);
  const auto inv = invert(j);
  const auto ref = j_reciprocal(P, kZ);
  const auto bound = std::min(inv.precision(), ref.precision());
  EXPECT_GE(bound, P);
  EXPECT_FALSE(first_mismatch(inv, ref, bound).has_value());
}

TEST(Series, PowExamples) {
  expect_agree(pow(poly({1, 1}, 10), 2), poly({1, 2, 1}, 10));
  expect_agree(pow(poly({1, 1}, 10), 0), Z::one(kZ, 240));
  const auto d = pow(eta_power(1, 1, through_q(10) + 24, kZ), 24);
  EXPECT_EQ(d.leading_exponent(), 24);
  EXPECT_EQ(d.coeff_at(24), 1);
  expect_agree(pow(poly({1, 3, -2}, 20), -3), invert(pow(poly({1, 3, -2}, 20), 3)));
}

TEST(Series, E4EighthPowerIsOneMod128) {
  const ResidueRing R(128);
  const auto f = pow(eisenstein(4, through_q(2064), R), 8);
  EXPECT_FALSE(first_mismatch(f, Zm::one(R, through_q(2064)), through_q(2064)).has_value());
}

TEST(Series, QDerivExamples) {
  EXPECT_TRUE(qderiv(Z::one(kZ, 100)).is_zero());
  const auto q = qderiv(Z::monomial(kZ, 24, 1, 100));
  EXPECT_EQ(q.coeff_at(24), 1);
  // q^{1/24} has no exact integral derivative
  EXPECT_THROW(qderiv(Z::monomial(kZ, 1, 1, 100)), std::exception);
}

TEST(Series, CoeffAtExamples) {
  const auto j = j_invariant(through_q(3), kZ);
  EXPECT_EQ(coeff_at(j, -24), 1);
  EXPECT_EQ(coeff_at(j, 0), 744);
  EXPECT_EQ(coeff_at(j, 24), 196884);
  EXPECT_EQ(coeff_at(delta(through_q(3), kZ), 24), 1);
  EXPECT_EQ(coeff_at(delta(through_q(3), kZ), -48), 0);
  EXPECT_THROW(coeff_at(j, j.precision()), precision_error);
}

TEST(Series, ReduceModExamples) {
  const auto e4 = eisenstein(4, through_q(100), kZ);
  const auto sigma_part = sub(e4, Z::one(kZ, e4.precision()));
  EXPECT_TRUE(reduce_mod(sigma_part, 16).is_zero());
  const auto inv = invert(euler_product(through_q(20), kZ));
  EXPECT_EQ(reduce_mod(inv, 5).coeff_q(4), 0u);
  EXPECT_TRUE(agree(reduce_mod(poly({1, 128}, 5), 128), Zm::one(ResidueRing(128), 120)));
  EXPECT_THROW(reduce_mod(reduce_mod(inv, 6), 4), ring_mismatch);
}

TEST(Series, RingMismatchThrows) {
  const auto f = Zm::one(ResidueRing(4), 48);
  const auto g = Zm::one(ResidueRing(8), 48);
  EXPECT_THROW(add(f, g), ring_mismatch);
  EXPECT_THROW(mul(f, g), ring_mismatch);
}

TEST(Series, TruncatedCannotRaisePrecision) {
  const auto f = poly({1, 2}, 3);
  EXPECT_THROW(f.truncated(100), precision_error);
  EXPECT_EQ(f.truncated(24).precision(), 24);
}

TEST(Series, DivideBySparseMatchesInverse) {
  const std::int64_t P = through_q(300);
  const auto f = oracle::random_series(301);
  const auto u = detail::eta_unit_sparse(kZ, 1, P, true);
  expect_agree(divide(f, u), mul(f, invert(u.to_dense())));
}

TEST(Series, CacheRoundTrip) {
  const auto f = eta_power(1, -1, 240, kZ);
  std::stringstream ss;
  write_series_cache(ss, "eta:1^-1", f);
  const auto c = read_series_cache(ss);
  EXPECT_EQ(c.name, "eta:1^-1");
  const auto g = c.bind(kZ);
  EXPECT_TRUE(agree(f, g));
  EXPECT_EQ(g.min_exp(), -1);
  EXPECT_THROW(c.bind(ResidueRing(4)), ring_mismatch);
  std::stringstream bad("# name=x ring=Z min_exp=0\n1\n");
  EXPECT_THROW(read_series_cache(bad), cache_format_error);
}

// ---- properties ---------------------------------------------------------

TEST(SeriesProperty, RingAxiomsOnRandomTriples) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_series(64), g = oracle::random_series(64), h = oracle::random_series(64);
    expect_agree(add(add(f, g), h), add(f, add(g, h)));
    expect_agree(add(f, g), add(g, f));
    expect_agree(mul(mul(f, g), h), mul(f, mul(g, h)));
    expect_agree(mul(f, g), mul(g, f));
    expect_agree(mul(f, add(g, h)), add(mul(f, g), mul(f, h)));
  }
}

TEST(SeriesProperty, ProductMatchesNaiveOracle) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_series(64), g = oracle::random_series(64);
    EXPECT_EQ(oracle::coefficients(mul(f, g), 64), oracle::mul(oracle::coefficients(f, 64), oracle::coefficients(g, 64)));
  }
}

TEST(SeriesProperty, TimesInverseIsOne) {
  for (int trial = 0; trial < 30; ++trial) {
    auto f = oracle::random_series(64);
    f = add(sub(f, Z::monomial(kZ, 0, f.coeff_q(0), f.precision())),
            Z::monomial(kZ, 0, trial % 2 ? 1 : -1, f.precision()));
    expect_agree(mul(f, invert(f)), Z::one(kZ, f.precision()));
  }
}

TEST(SeriesProperty, PowAdditiveInExponent) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_series(40, 5);
    const auto a = oracle::uniform(0, 4), b = oracle::uniform(0, 4);
    expect_agree(pow(f, a + b), mul(pow(f, a), pow(f, b)));
  }
}

TEST(SeriesProperty, QDerivLeibniz) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_series(64), g = oracle::random_series(64);
    expect_agree(qderiv(mul(f, g)), add(mul(qderiv(f), g), mul(f, qderiv(g))));
  }
}

TEST(SeriesProperty, ReduceModCommutes) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_series(64, 1000), g = oracle::random_series(64, 1000);
    const std::uint64_t m = static_cast<std::uint64_t>(oracle::uniform(2, 200));
    EXPECT_TRUE(agree(reduce_mod(add(f, g), m), add(reduce_mod(f, m), reduce_mod(g, m))));
    EXPECT_TRUE(agree(reduce_mod(mul(f, g), m), mul(reduce_mod(f, m), reduce_mod(g, m))));
  }
}

TEST(SeriesProperty, ResidueInverseForUnitsCoprimeToModulus) {
  const ResidueRing R(128);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = reduce_mod(oracle::random_series(50), 128);
    f = add(sub(f, Zm::monomial(R, 0, f.coeff_q(0), f.precision())),
            Zm::monomial(R, 0, static_cast<std::uint64_t>(2 * oracle::uniform(0, 63) + 1), f.precision()));
    EXPECT_TRUE(agree(mul(f, invert(f)), Zm::one(R, f.precision())));
  }
}
