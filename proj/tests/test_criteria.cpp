#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffprim/criteria.hpp"

#include <cmath>

#include "ffprim/counts.hpp"
#include "ffprim/report.hpp"

using namespace ffprim;

namespace {

SieveConfig config_for(u64 q, int n, BetaClass beta, const std::vector<u128>& sieving) {
  // build the partition that puts exactly `sieving` into the sieve set
  u128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  Factorization base = beta == BetaClass::NonZero ? factorize(qn - 1)
                                                  : factorize((qn - 1) / (q - 1));
  Factorization special = factorize((qn - 1) / (q - 1));
  SieveConfig cfg = make_sieve_config(base, static_cast<int>(sieving.size()), special);
  REQUIRE(cfg.primes == sieving);
  return cfg;
}

}  // namespace

TEST_CASE("pair classification") {
  auto c1 = classify_pair(3, 4);
  CHECK_FALSE(c1.n_is_prime);
  REQUIRE(c1.chain.size() == 1);
  CHECK(c1.chain[0].ell == 2);
  CHECK(c1.chain[0].m == 2);
  CHECK(c1.chain[0].special_case);

  auto c2 = classify_pair(7, 3);
  CHECK(c2.odd_pair);
  auto c3 = classify_pair(5, 3);
  CHECK(c3.even_pair);
  CHECK_FALSE(c3.odd_pair);
  auto c4 = classify_pair(5, 2);
  CHECK(c4.even_pair);

  auto c5 = classify_pair(3, 8);
  CHECK(c5.chain.size() == 2);
  CHECK(c5.omega == 3);

  CHECK_THROWS_AS(classify_pair(8, 2), std::invalid_argument);
  CHECK_THROWS_AS(classify_pair(12, 2), std::invalid_argument);
}

TEST_CASE("main inequality") {
  auto r55 = check_main(5, 5);
  CHECK(r55.holds);
  CHECK(r55.lhs == doctest::Approx(25));
  CHECK(r55.rhs == doctest::Approx(23));
  CHECK(r55.details["W_full"] == 8);
  CHECK(r55.details["W_Q"] == 4);

  CHECK_FALSE(check_main(5, 3).holds);
  CHECK_FALSE(check_main(9, 3).holds);
  CHECK(check_main(17, 3).holds);

  // enormous degree: right side is bounded, left side is not
  CHECK(check_main(5, 101).holds);

  CHECK_THROWS_AS(check_main(7, 3), std::invalid_argument);  // odd pair
  CHECK_THROWS_AS(check_main(5, 4), std::invalid_argument);  // composite degree
}

TEST_CASE("zero-trace inequality") {
  CHECK(check_O_star(5, 7).holds);
  CHECK(check_O_star(5, 5).holds);  // 5^(5/2) = 55.9 > 2*4*4
  CHECK_FALSE(check_O_star(5, 3).holds);
  CHECK_FALSE(check_O_star(37, 3).holds);
  CHECK(check_O_star(5, 61).holds);
  CHECK_THROWS_AS(check_O_star(5, 2), std::invalid_argument);
}

TEST_CASE("sieve configs recompute their slack") {
  auto cfg = config_for(29, 3, BetaClass::NonZero, {67, 13, 7});
  CHECK(std::abs(cfg.delta - cfg.recompute_delta()) < 1e-12);
  CHECK(cfg.kernel == 2);
  CHECK(cfg.kernel_nu == 1);
  CHECK(cfg.r_count == 2);  // 67 and 13 divide Q = 871
  CHECK(cfg.delta == doctest::Approx(1.0 - 1.0 / 67 - 1.0 / 13 - 1.0 / 7));
  CHECK(cfg.delta_special == doctest::Approx(1.0 - 1.0 / 67 - 1.0 / 13));
}

TEST_CASE("sharp sieve reproduces the worked degree-3 configurations") {
  // nonzero class
  CHECK(sieve_generic(29, 3, BetaClass::NonZero, config_for(29, 3, BetaClass::NonZero, {67, 13, 7})).holds);
  CHECK(sieve_generic(61, 3, BetaClass::NonZero, config_for(61, 3, BetaClass::NonZero, {97, 13, 5})).holds);
  CHECK(sieve_generic(121, 3, BetaClass::NonZero, config_for(121, 3, BetaClass::NonZero, {37, 19, 7})).holds);
  // the immediately smaller sieve sets must fail (the greedy path)
  CHECK_FALSE(sieve_generic(29, 3, BetaClass::NonZero, config_for(29, 3, BetaClass::NonZero, {67, 13})).holds);
  CHECK_FALSE(sieve_generic(61, 3, BetaClass::NonZero, config_for(61, 3, BetaClass::NonZero, {97, 13})).holds);
  CHECK_FALSE(sieve_generic(121, 3, BetaClass::NonZero, config_for(121, 3, BetaClass::NonZero, {37, 19})).holds);

  // zero class
  CHECK(sieve_generic(61, 3, BetaClass::Zero, config_for(61, 3, BetaClass::Zero, {97, 13, 3})).holds);
  CHECK(sieve_generic(109, 3, BetaClass::Zero, config_for(109, 3, BetaClass::Zero, {571, 7})).holds);
  CHECK(sieve_generic(29, 3, BetaClass::Zero, config_for(29, 3, BetaClass::Zero, {67, 13})).holds);
  CHECK(sieve_generic(81, 3, BetaClass::Zero, config_for(81, 3, BetaClass::Zero, {73, 13})).holds);
}

TEST_CASE("generic sieve variants remain available for audit") {
  auto cfg = config_for(29, 3, BetaClass::NonZero, {67, 13, 7});
  auto generic = sieve_generic(29, 3, BetaClass::NonZero, cfg, SieveTheorem::NonzeroGeneric);
  auto sharp = sieve_generic(29, 3, BetaClass::NonZero, cfg, SieveTheorem::NonzeroSharp);
  CHECK(generic.rhs > sharp.rhs);  // the sharp form strengthens the bound
  CHECK(generic.criterion == "sieve-nonzero");
  CHECK(sharp.criterion == "sieve-nonzero-sharp");

  auto zcfg = config_for(61, 3, BetaClass::Zero, {97, 13, 3});
  auto zgen = sieve_generic(61, 3, BetaClass::Zero, zcfg, SieveTheorem::ZeroGeneric);
  auto zsharp = sieve_generic(61, 3, BetaClass::Zero, zcfg, SieveTheorem::ZeroSharp);
  CHECK(zgen.rhs > zsharp.rhs);

  // delta <= 0 is inapplicable, never a verdict
  u128 qn = static_cast<u128>(9) * 9 * 9;
  auto f = factorize(qn - 1);
  auto all = make_sieve_config(f, f.nu(), factorize((qn - 1) / 8));
  if (all.delta <= 0) {
    auto rep = sieve_generic(9, 3, BetaClass::NonZero, all);
    CHECK_FALSE(rep.applicable);
    CHECK_FALSE(rep.holds);
  }
}

TEST_CASE("monotonicity of the main bound in q at fixed W profile") {
  // with the W values frozen, the left side grows with q while the right is
  // constant, so a pass stays a pass for larger q
  auto base = check_main(17, 3);
  REQUIRE(base.holds);
  double rhs = base.rhs;
  for (u64 q : {29, 53, 101}) {
    double lhs = std::sqrt(static_cast<double>(q)) * 0 + static_cast<double>(q);  // q^((3-1)/2)
    CHECK(lhs > rhs);
  }
}

TEST_CASE("quadratic-extension criteria") {
  // small survivors fail the plain inequality
  for (u64 q : {3, 5, 7, 9, 11, 13, 27}) CHECK_FALSE(check_n2_plain(q).holds);
  // a non-survivor that passes outright
  CHECK(check_n2_plain(163).holds);
  // the largest plain failure succumbs to one round of sieving
  CHECK_FALSE(check_n2_plain(14821).holds);
  auto greedy14821 = greedy_sieve(14821, 2, BetaClass::NonZero);
  CHECK(greedy14821.holds);
  REQUIRE(greedy14821.sieve.has_value());
  CHECK(greedy14821.sieve->primes == std::vector<u128>{7411, 19});

  // known survivors of the greedy strategy
  for (u64 q : {3, 5, 9, 27, 31, 121, 3541, 1861}) {
    CHECK_FALSE(greedy_sieve(q, 2, BetaClass::NonZero).holds);
  }
  // the plain inequality is the s = 0 row of the sieve
  for (u64 q : {5, 163, 1861}) {
    u128 q2 = static_cast<u128>(q) * q - 1;
    auto f = factorize(q2);
    Factorization fo = f;
    if (fo.factors.front().first == 2) {
      for (int i = 0; i < fo.factors.front().second; ++i) fo.value /= 2;
      fo.factors.erase(fo.factors.begin());
    }
    auto cfg = make_sieve_config(fo, 0, factorize(q + 1));
    auto via_sieve = sieve_n2(q, cfg);
    auto plain = check_n2_plain(q);
    CHECK(via_sieve.holds == plain.holds);
    CHECK(via_sieve.lhs == doctest::Approx(plain.lhs));
    CHECK(via_sieve.rhs == doctest::Approx(plain.rhs));
  }
}

TEST_CASE("greedy sieve on odd prime degrees") {
  // trivial success at s = 0 when the plain sharp bound already holds
  auto big = greedy_sieve(1009, 3, BetaClass::NonZero);
  CHECK(big.holds);
  REQUIRE(big.sieve.has_value());
  CHECK(big.sieve->s() == 0);

  // reproduces the worked sieving prime sets
  auto g29 = greedy_sieve(29, 3, BetaClass::NonZero);
  CHECK(g29.holds);
  CHECK(g29.sieve->primes == std::vector<u128>{67, 13, 7});
  auto g61 = greedy_sieve(61, 3, BetaClass::NonZero);
  CHECK(g61.holds);
  CHECK(g61.sieve->primes == std::vector<u128>{97, 13, 5});
  auto g121 = greedy_sieve(121, 3, BetaClass::NonZero);
  CHECK(g121.holds);
  CHECK(g121.sieve->primes == std::vector<u128>{37, 19, 7});

  auto z61 = greedy_sieve(61, 3, BetaClass::Zero);
  CHECK(z61.holds);
  CHECK(z61.sieve->primes == std::vector<u128>{97, 13, 3});
  auto z109 = greedy_sieve(109, 3, BetaClass::Zero);
  CHECK(z109.holds);
  CHECK(z109.sieve->primes == std::vector<u128>{571, 7});

  // failures carry the attempted configurations
  auto f5 = greedy_sieve(5, 3, BetaClass::NonZero);
  CHECK_FALSE(f5.holds);
  CHECK(f5.details["attempts"].size() > 0);

  CHECK_THROWS_AS(greedy_sieve(7, 3, BetaClass::NonZero), std::invalid_argument);  // odd pair
}

TEST_CASE("interval cascades recompute their thresholds") {
  auto n3nz = interval_reduction(3, BetaClass::NonZero);
  REQUIRE(n3nz.size() == 4);
  // q^(1/4) > 2 sqrt(2) * 4.87 / 2^(1/4) = 11.5828...
  double rhs1 = 2.0 * std::sqrt(2.0) * 4.87 / std::pow(2.0, 0.25);
  CHECK(rhs1 == doctest::Approx(11.5828).epsilon(1e-4));
  CHECK(n3nz[0].threshold == doctest::Approx(std::pow(rhs1, 4)).epsilon(1e-9));
  CHECK(n3nz[0].milestone == 18000);
  CHECK(n3nz[1].milestone == 361);
  CHECK(n3nz[2].milestone == 173);
  CHECK(n3nz[3].milestone == 128);

  auto n3z = interval_reduction(3, BetaClass::Zero);
  REQUIRE(n3z.size() == 4);
  CHECK(n3z[0].milestone == 144303);
  CHECK(n3z[1].milestone == 1067);
  CHECK(n3z[2].milestone == 319);
  CHECK(n3z[3].milestone == 185);

  auto n2chain = interval_reduction(2, BetaClass::NonZero);
  REQUIRE(n2chain.size() == 5);
  CHECK(n2chain[0].threshold == doctest::Approx(16.0 * std::pow(46.103, 6)).epsilon(1e-9));
  CHECK(n2chain[1].milestone == 488500);
  CHECK(n2chain[2].milestone == 41101);
  CHECK(n2chain[3].milestone == 25457);
  CHECK(n2chain[4].milestone == 14850);

  auto n5 = interval_reduction(5, BetaClass::NonZero);
  double rhs5 = 4.0 * 4.87 / std::pow(2.0, 0.25);
  CHECK(rhs5 == doctest::Approx(16.38).epsilon(1e-3));
  CHECK(n5[0].threshold == doctest::Approx(std::pow(rhs5, 4.0 / 3.0)).epsilon(1e-9));

  auto n5z = interval_reduction(5, BetaClass::Zero);
  REQUIRE(n5z.size() == 3);
  CHECK(n5z[0].milestone <= 33);  // the coarse route settles q > 32
}

TEST_CASE("c_ell pool constants used by the cascades") {
  // 1 mod 6 pool for q^2+q+1
  u128 pool = 3;
  for (u64 p : {7, 13, 19, 31, 37, 43, 61}) pool *= p;
  double c6Q = c_ell(factorize(pool), 6);
  CHECK(c6Q < 5.1211);
  CHECK(c6Q > 5.11);
  double c4a = c_ell(factorize(55), 4);
  CHECK(c4a < 1.469);
  double c4b = c_ell(factorize(11), 4);
  CHECK(c4b < 1.099);
}

TEST_CASE("full pipeline verdicts") {
  auto odd = decide_pair(7, 3);
  CHECK(odd.kind == Verdict::Kind::ProvenAnalytic);
  CHECK(odd.exists);

  auto comp = decide_pair(3, 4);
  CHECK(comp.kind == Verdict::Kind::ProvenAnalytic);
  CHECK(comp.exists);

  auto exc = decide_pair(5, 2);
  CHECK(exc.kind == Verdict::Kind::GenuineException);
  CHECK_FALSE(exc.exists);
  REQUIRE(exc.trace_set.has_value());
  CHECK(*exc.trace_set == std::set<u64>{2, 3});

  auto exc_beta = decide_pair(5, 2, 2);
  CHECK(exc_beta.kind == Verdict::Kind::ProvenByComputation);
  CHECK(exc_beta.exists);
  auto exc_beta1 = decide_pair(5, 2, 1);
  CHECK(exc_beta1.kind == Verdict::Kind::GenuineException);
  CHECK_FALSE(exc_beta1.exists);

  auto zero37 = decide_pair(37, 3, 0);
  CHECK(zero37.kind == Verdict::Kind::ProvenByComputation);
  CHECK(zero37.exists);

  auto q3z = decide_pair(3, 2, 0);
  CHECK(q3z.exists);
  auto q7z = decide_pair(7, 2, 0);
  CHECK_FALSE(q7z.exists);
  CHECK(q7z.kind == Verdict::Kind::GenuineException);

  auto easy = decide_pair(163, 2);
  CHECK(easy.kind == Verdict::Kind::ProvenAnalytic);
  CHECK(easy.exists);
}

TEST_CASE("analytic passes are sound against exhaustive search") {
  // every quadratic pair the analytics accept must actually attain every
  // nonzero trace
  for (u64 q = 3; q <= 313; q += 2) {
    u64 p;
    int a;
    if (!prime_power_decompose(q, p, a) || p == 2) continue;
    bool analytic = check_n2_plain(q).holds || greedy_sieve(q, 2, BetaClass::NonZero).holds;
    if (!analytic) continue;
    auto E = Extension::build(q, 2);
    auto traces = two_primitive_trace_set(E);
    for (u64 b = 1; b < q; ++b) CHECK(traces.count(b) == 1);
  }
}
