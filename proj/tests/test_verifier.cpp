#include <gtest/gtest.h>

#include "support.hpp"

using namespace sptlab;

namespace {

const IntegerRing kZ;

CongruenceSpec spt_residue_spec(std::uint64_t modulus, std::int64_t u, std::int64_t v, std::int64_t N) {
  CongruenceSpec s;
  s.name = "probe";
  s.modulus = modulus;
  s.n0 = 0;
  s.N = N;
  s.terms = {{TableFunc::spt, u, v, 1}};
  return s;
}

}  // namespace

TEST(CheckIdentity, DetectsFirstDifference) {
  const std::int64_t P = through_q(5);
  const auto q1 = QSeries<IntegerRing>::monomial(kZ, 24, 1, P);
  const auto q2 = QSeries<IntegerRing>::monomial(kZ, 48, 1, P);
  const auto r = check_identity(q1, q2, std::nullopt, 4);
  EXPECT_EQ(r.status, Status::fail);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(r.first_failure->index, 24);
  EXPECT_EQ(r.first_failure->value, 1);
  const auto back = check_identity(q2, q1, std::nullopt, 4);
  EXPECT_EQ(back.first_failure->index, 24);
  EXPECT_EQ(back.first_failure->value, -1);
  EXPECT_TRUE(check_identity(q1, q1, std::nullopt, 4).passed());
  EXPECT_THROW(check_identity(q1, q2, std::nullopt, 6), precision_error);
}

TEST(CheckIdentity, ModulusReducesBeforeComparing) {
  const std::int64_t P = through_q(3);
  const auto f = QSeries<IntegerRing>(kZ, 0, kUnit, P, {1, 128, 0, 256});
  const auto one = QSeries<IntegerRing>::one(kZ, P);
  EXPECT_TRUE(check_identity(f, one, 128, 3).passed());
  EXPECT_FALSE(check_identity(f, one, 256, 3).passed());
  EXPECT_EQ(check_identity(f, one, 256, 3).first_failure->value, 128);
}

TEST(Congruence, AndrewsAndRamanujanStyleExamples) {
  EXPECT_TRUE(eval_congruence(andrews_spec(5, 2000)).passed());
  EXPECT_TRUE(eval_congruence(andrews_spec(7, 2000)).passed());
  EXPECT_TRUE(eval_congruence(andrews_spec(13, 2000)).passed());
  EXPECT_THROW(andrews_spec(11, 100), std::invalid_argument);
  // spt(5n + 3) is not always 0 mod 5
  const auto bad = eval_congruence(spt_residue_spec(5, 5, 3, 100));
  EXPECT_EQ(bad.status, Status::fail);
  ASSERT_TRUE(bad.first_failure);
  const auto table = spt_table(600, kZ);
  EXPECT_EQ(bad.first_failure->value, mpz_fdiv_ui(table.at(5 * bad.first_failure->index + 3).get_mpz_t(), 5));
  for (std::int64_t n = 0; n < bad.first_failure->index; ++n) EXPECT_EQ(mpz_fdiv_ui(table.at(5 * n + 3).get_mpz_t(), 5), 0u);
}

TEST(Congruence, OffLatticeArgumentsContributeZero) {
  // spt((n + 1) / 2): only odd n read the table
  CongruenceSpec s = spt_residue_spec(1000000007, 1, 1, 30);
  s.terms[0].w = 2;
  s.n0 = 0;
  s.N = 0;
  EXPECT_TRUE(eval_congruence(s).passed());
  s.N = 1;
  EXPECT_FALSE(eval_congruence(s).passed());
}

TEST(Congruence, Mod72ImpliesMod8AndMod9) {
  for (const std::int64_t l : {5, 7, 11, 13}) {
    EXPECT_TRUE(eval_congruence(ell_congruence_spec("g", l, 100, 72)).passed()) << l;
    EXPECT_TRUE(eval_congruence(ell_congruence_spec("g", l, 100, 8)).passed()) << l;
    EXPECT_TRUE(eval_congruence(ell_congruence_spec("g", l, 100, 9)).passed()) << l;
  }
}

TEST(Congruence, MainTheoremSmallRange) {
  for (const std::int64_t l : {5, 7, 11, 13, 17, 19, 23}) {
    const auto r = eval_congruence(main_congruence_spec(l, 60));
    EXPECT_TRUE(r.passed()) << l;
    EXPECT_EQ(r.modulus, std::uint64_t{1} << prime_context(l).beta);
  }
  // one power of 2 beyond the theorem fails somewhere for l = 5
  EXPECT_FALSE(eval_congruence(ell_congruence_spec("over", 5, 60, 16)).passed());
}

TEST(Congruence, TableLimitSkips) {
  const auto r = eval_congruence(main_congruence_spec(97, 200), 1000);
  EXPECT_EQ(r.status, Status::skipped);
  EXPECT_TRUE(r.params.contains("reason"));
}

TEST(Congruence, ProductModulusAndFamilies) {
  EXPECT_EQ(prime_product_modulus(5), 91u);
  EXPECT_EQ(prime_product_modulus(11), 455u);
  EXPECT_TRUE(eval_congruence(ell_congruence_spec("t", 11, 80, prime_product_modulus(11))).passed());
  for (const std::int64_t p : {5, 7, 13}) EXPECT_TRUE(eval_congruence(family_spec(p, 3, 20)).passed()) << p;
  EXPECT_EQ(family_spec(5, 3, 1).modulus, 125u);
  EXPECT_EQ(family_spec(7, 4, 1).modulus, 343u * 7u * 7u);
  EXPECT_EQ(family_spec(13, 3, 1).modulus, 169u);
  EXPECT_THROW(family_spec(11, 3, 1), std::invalid_argument);
  EXPECT_THROW(family_spec(5, 2, 1), std::invalid_argument);
}

TEST(Congruence, EllDependentTermWithoutEllThrows) {
  auto s = spt_residue_spec(5, 1, 0, 3);
  s.terms[0].jacobi = true;
  EXPECT_THROW(eval_congruence(s), std::invalid_argument);
}

TEST(Sturm, TabulatedDepths) {
  EXPECT_EQ(sturm_depth("e4-mod128"), 2064);
  EXPECT_EQ(sturm_depth("e2-mod128"), 2064);
  EXPECT_EQ(sturm_depth("w24-lift"), 576);
  EXPECT_EQ(sturm_depth("w72-lift"), 1728);
  EXPECT_EQ(sturm_depth("p-of-h"), 6912);
  EXPECT_THROW(sturm_depth("main"), std::invalid_argument);
}

TEST(NamedChecks, FastChecksPass) {
  EXPECT_TRUE(e4_mod128_check(2064).passed());
  EXPECT_TRUE(e2_mod128_check(2064).passed());
  EXPECT_TRUE(w24_lift_check(576).passed());
  EXPECT_TRUE(p_of_h_check(6912).passed());
  EXPECT_TRUE(d_series_check(2400).passed());
  EXPECT_TRUE(hecke_alpha_check(5, 50).passed());
  const auto props = props_check(97);
  EXPECT_TRUE(props.passed());
}

TEST(NamedChecks, LiftSupportIsCoprimeToSix) {
  const ResidueRing R(4);
  const auto g = eta_power(24, 25, through_q(24 * 100 + 1), R);
  const auto B = shimura_lift(g, LiftSpec{1, 12, DirichletCharacter::chi12()}, 48);
  EXPECT_FALSE(detail::lift_support_violation(B).has_value());
}

TEST(Suite, RegistryAndDefaults) {
  EXPECT_EQ(check_families().size(), 20u);
  for (const auto& f : check_families()) EXPECT_TRUE(is_known_family(f));
  EXPECT_FALSE(is_known_family("bogus"));
  EXPECT_EQ(default_args("props"), (std::vector<std::int64_t>{97}));
  EXPECT_EQ(default_args("s-cong"), (std::vector<std::int64_t>{5, 7, 13}));
  EXPECT_TRUE(default_args("e4-mod128").empty());
  EXPECT_THROW(run_named_check({"bogus", std::nullopt}), std::invalid_argument);
  EXPECT_THROW(run_named_check({"main", std::nullopt}), std::invalid_argument);
  EXPECT_THROW(run_named_check({"main", 9}), std::invalid_argument);
  EXPECT_EQ((CheckRequest{"main", 13}).name(), "main:13");
}

TEST(Suite, EmptyAndOrdering) {
  EXPECT_TRUE(run_suite({}).empty());
  EXPECT_EQ(suite_exit_status({}), 0);
  const std::vector<CheckRequest> reqs{{"main", 13}, {"andrews", 5}, {"mod3", 7}, {"props", 29}, {"family7", 3}};
  CheckOptions opt;
  opt.scale = DepthScale::smoke;
  opt.n_max = 40;
  const auto one = run_suite(reqs, opt, 1);
  const auto many = run_suite(reqs, opt, 4);
  ASSERT_EQ(one.size(), reqs.size());
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    EXPECT_EQ(one[i].check, reqs[i].name());
    EXPECT_EQ(to_json(one[i], false), to_json(many[i], false));
  }
  EXPECT_EQ(suite_exit_status(one), 0);
}

TEST(Suite, ExitStatusReflectsFailuresAndSkips) {
  Report pass, fail, skip;
  fail.status = Status::fail;
  skip.status = Status::skipped;
  EXPECT_EQ(suite_exit_status({pass, skip}), 3);
  EXPECT_EQ(suite_exit_status({pass, skip, fail}), 1);
  EXPECT_EQ(suite_exit_status({pass}), 0);
  const auto bad = eval_congruence(spt_residue_spec(7, 7, 1, 50));
  EXPECT_EQ(suite_exit_status({pass, bad}), 1);
}

TEST(Suite, SmokeDepthIsCapped) {
  EXPECT_EQ(scaled_depth(2064, DepthScale::smoke), 200);
  EXPECT_EQ(scaled_depth(100, DepthScale::smoke), 100);
  EXPECT_EQ(scaled_depth(2064, DepthScale::full), 2064);
  CheckOptions opt;
  opt.scale = DepthScale::smoke;
  const auto r = run_named_check({"e2-mod128", std::nullopt}, opt);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.depth, 200);
}

TEST(Report, Serializations) {
  Report r;
  r.check = "main:5";
  r.params = {{"ell", 5}};
  r.modulus = 8;
  r.depth = 200;
  r.status = Status::fail;
  r.first_failure = FirstFailure{17, mpz_class("123456789012345678901234567890")};
  r.seconds = 1.5;
  const auto j = to_json(r, false);
  EXPECT_EQ(j["check"], "main:5");
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["first_failure"]["index"], 17);
  EXPECT_EQ(j["first_failure"]["value"], "123456789012345678901234567890");
  EXPECT_EQ(j["seconds"], 0.0);
  EXPECT_EQ(to_json(r)["seconds"], 1.5);
  EXPECT_NE(to_tsv(r, false).find("\tfail\t17\t"), std::string::npos);
  EXPECT_NE(to_human(r, false).find("first failure at 17"), std::string::npos);
}
