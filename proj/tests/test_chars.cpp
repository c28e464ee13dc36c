#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffprim/chars.hpp"

#include <cmath>
#include <complex>

using namespace ffprim;

namespace {
bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}
}  // namespace

TEST_CASE("canonical additive character") {
  auto F9 = FieldCtx::build(3, 2);
  CHECK(close(canonical_psi(F9, F9.zero()), {1.0, 0.0}));
  // Tr0(i) = i + i^3 = 0, so psi(i) = 1
  CHECK(close(canonical_psi(F9, F9.from_index(3)), {1.0, 0.0}));

  for (auto [p, k] : std::vector<std::pair<u64, int>>{{5, 1}, {3, 2}, {7, 1}, {5, 2}}) {
    auto F = FieldCtx::build(p, k);
    std::complex<double> s{0, 0};
    for (u64 i = 0; i < F.size(); ++i) s += canonical_psi(F, F.from_index(i));
    CHECK(close(s, {0.0, 0.0}, 1e-9 * static_cast<double>(F.size())));
  }
}

TEST_CASE("orthogonality") {
  for (auto [p, k] : std::vector<std::pair<u64, int>>{{3, 2}, {5, 2}, {13, 1}, {7, 2}}) {
    auto F = FieldCtx::build(p, k);
    CharTable T(F);
    for (const auto& chi : all_nontrivial_chars(F)) {
      std::complex<double> s{0, 0};
      for (u64 i = 0; i < F.size(); ++i) s += T.chi(chi, F.from_index(i));
      CHECK(std::abs(s) < 1e-7 * static_cast<double>(F.size()));
    }
    for (u64 ui = 1; ui < F.size(); ++ui) {
      FieldElem u = F.from_index(ui);
      std::complex<double> s{0, 0};
      for (u64 i = 0; i < F.size(); ++i)
        s += canonical_psi(F, F.mul(u, F.from_index(i)));
      CHECK(std::abs(s) < 1e-7 * static_cast<double>(F.size()));
    }
  }
}

TEST_CASE("quadratic Gauss sum: proportionality and signs") {
  // g(u) = chi2(u) g(1) on every field up to 1e4 elements in this sample
  for (auto [q, n] : std::vector<std::pair<u64, int>>{{3, 2}, {5, 2}, {7, 2}, {9, 2}, {5, 3}}) {
    auto E = Extension::build(q, n, true);
    const FieldCtx& F = E.top();
    CharTable T(F);
    auto g1 = gauss_quadratic(F, F.one());
    for (u64 i = 1; i < F.size(); ++i) {
      FieldElem u = F.from_index(i);
      auto gu = gauss_quadratic(F, u);
      CHECK(close(gu.v, static_cast<double>(T.chi2_sign(u)) * g1.v, 1e-6));
    }
    // degenerate u = 0
    auto g0 = gauss_quadratic(F, F.zero());
    CHECK(g0.degenerate);
    CHECK(g0.v.real() == doctest::Approx(static_cast<double>(F.size())));
  }

  // n = 2: g(1) = eps1 * q
  for (u64 q : {3, 5, 7, 9, 11, 13}) {
    auto E = Extension::build(q, 2, true);
    auto g = gauss_quadratic(E.top(), E.top().one());
    CHECK(g.v.real() == doctest::Approx(eps1(q) * static_cast<double>(q)).epsilon(1e-9));
    CHECK(std::abs(g.v.imag()) < 1e-6);
  }
  CHECK(eps1(3) == 1);
  CHECK(eps1(5) == -1);

  // n = 3: g(1) = eps2 * q^(3/2)
  for (u64 q : {5, 9, 13, 25}) {
    u64 p;
    int a;
    REQUIRE(prime_power_decompose(q, p, a));
    auto E = Extension::build(q, 3, true);
    auto g = gauss_quadratic(E.top(), E.top().one());
    double expect = eps2(p, a) * std::pow(static_cast<double>(q), 1.5);
    CHECK(g.v.real() == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::abs(g.v.imag()) < 1e-5);
    CHECK(std::abs(std::abs(g.v) - std::pow(static_cast<double>(q), 1.5)) < 1e-6);
  }
}

TEST_CASE("general Gauss sum") {
  for (auto [p, k] : std::vector<std::pair<u64, int>>{{5, 1}, {5, 2}, {13, 1}, {3, 3}}) {
    auto F = FieldCtx::build(p, k);
    CHECK(close(gauss_general(F, trivial_char(F)).v, {-1.0, 0.0}, 1e-9));
    double half = std::sqrt(static_cast<double>(F.size()));
    CHECK(std::abs(gauss_general(F, quadratic_char(F)).v) == doctest::Approx(half).epsilon(1e-9));
    for (const auto& chi : all_nontrivial_chars(F)) {
      CHECK(std::abs(gauss_general(F, chi).v) == doctest::Approx(half).epsilon(1e-7));
    }
  }
  // the two order-4 characters of F_5
  auto F5 = FieldCtx::build(5, 1);
  auto quartics = chars_of_order(F5, 4);
  REQUIRE(quartics.size() == 2);
  for (const auto& chi : quartics)
    CHECK(std::abs(gauss_general(F5, chi).v) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("mixed sums satisfy the four-case bound") {
  auto E = Extension::build(5, 2, true);
  const FieldCtx& F = E.top();
  double qn2 = std::sqrt(static_cast<double>(F.size()));

  CHECK(mixed_sum_X(F, trivial_char(F), F.zero()).v.real() ==
        doctest::Approx(static_cast<double>(F.order())));
  for (const auto& chi : all_nontrivial_chars(F)) {
    CHECK(std::abs(mixed_sum_X(F, chi, F.zero()).v) < 1e-9);
    for (u64 ui = 1; ui < F.size(); ++ui) {
      double a = std::abs(mixed_sum_X(F, chi, F.from_index(ui)).v);
      CHECK(a <= 2.0 * qn2 + 1e-6);
    }
  }
  for (u64 ui = 1; ui < F.size(); ++ui) {
    double a = std::abs(mixed_sum_X(F, trivial_char(F), F.from_index(ui)).v);
    CHECK(a <= qn2 + 1.0 + 1e-6);
  }
}

TEST_CASE("Katz-type sums over quadratic extensions") {
  for (u64 q : {3, 5, 13}) {
    auto E = Extension::build(q, 2, true);
    const FieldCtx& F = E.top();
    for (u64 idx = 1; idx < F.size(); ++idx) {
      FieldElem theta = F.from_index(idx);
      if (E.in_base(theta)) continue;
      for (const auto& chi : all_nontrivial_chars(F)) {
        auto B = katz_sum(E, theta, chi);
        if ((q + 1) % chi.order == 0) {
          CHECK(close(B.v, {-1.0, 0.0}, 1e-6));
        } else {
          CHECK(std::abs(B.v) == doctest::Approx(std::sqrt(static_cast<double>(q))).epsilon(1e-6));
        }
      }
      if (q == 13) break;  // one theta suffices for the larger field
    }
    auto in_base_theta = E.embed(E.base().one());
    CHECK_THROWS_AS(katz_sum(E, in_base_theta, all_nontrivial_chars(F)[0]), std::invalid_argument);
  }
}

TEST_CASE("squared-modulus identity for mixed sums") {
  auto E = Extension::build(5, 2, true);
  const FieldCtx& F = E.top();
  FieldElem ns = F.generator();  // a nonsquare of the top field
  for (const auto& chi : all_nontrivial_chars(F)) {
    for (const FieldElem& b : {F.one(), ns}) {
      auto id = modulus_identity_check(F, chi, b);
      CHECK(std::abs(id.lhs - id.rhs.real()) < 1e-6 * static_cast<double>(F.size()));
      CHECK(std::abs(id.rhs.imag()) < 1e-6 * static_cast<double>(F.size()));
      CHECK(std::abs(id.C.v) <= 2.0 * std::sqrt(static_cast<double>(F.size())) + 1e-6);
      // odd characters lose the q^n term
      CharTable T(F);
      if (close(T.chi(chi, F.neg(F.one())), {-1.0, 0.0})) {
        std::complex<double> g2 = gauss_quadratic(F, F.one()).v;
        CHECK(std::abs(id.lhs -
                       (static_cast<double>(T.chi2_sign(b)) * g2 * id.C.v).real()) <
              1e-6 * static_cast<double>(F.size()));
      }
    }
  }
  // |C(chi)| <= 2 sqrt(q) over a prime field as well
  auto F13 = FieldCtx::build(13, 1);
  for (const auto& chi : all_nontrivial_chars(F13)) {
    auto id = modulus_identity_check(F13, chi, F13.one());
    CHECK(std::abs(id.C.v) <= 2.0 * std::sqrt(13.0) + 1e-6);
  }
}

TEST_CASE("paired mixed-sum bound") {
  auto E = Extension::build(5, 3, true);
  const FieldCtx& F = E.top();
  FieldElem c = E.embed(E.base().find_nonsquare());
  for (const auto& chi : all_nontrivial_chars(F)) {
    auto pb = paired_sum_bound_check(E, chi);
    CHECK(pb.holds);
    // intermediate product bound
    CHECK(pb.x1_abs * pb.xc_abs <= 2.0 * static_cast<double>(F.size()) + 1e-5);
  }
  auto pb2 = paired_sum_bound_check(E, quadratic_char(F));
  CHECK(pb2.holds);
  (void)c;
}

TEST_CASE("trace characteristic function") {
  for (auto [q, n] : std::vector<std::pair<u64, int>>{{3, 2}, {5, 2}, {5, 3}}) {
    auto E = Extension::build(q, n, true);
    const FieldCtx& F = E.top();
    const FieldCtx& B = E.base();
    for (u64 xi = 0; xi < F.size(); ++xi) {
      FieldElem x = F.from_index(xi);
      u64 tr = E.trace_index(x);
      for (u64 bi = 0; bi < q; ++bi) {
        std::complex<double> s{0, 0};
        for (u64 ui = 0; ui < q; ++ui) {
          FieldElem u = B.from_index(ui);
          std::complex<double> pb = std::conj(canonical_psi(B, B.mul(u, B.from_index(bi))));
          std::complex<double> pt = canonical_psi(F, F.mul(E.embed(u), x));
          s += pb * pt;
        }
        s /= static_cast<double>(q);
        double expect = (tr == bi) ? 1.0 : 0.0;
        CHECK(std::abs(s - expect) < 1e-7 * static_cast<double>(q));
      }
    }
  }
}

TEST_CASE("character enumeration") {
  auto F = FieldCtx::build(5, 2);
  CHECK(chars_of_order(F, 1).size() == 1);
  CHECK(chars_of_order(F, 2).size() == 1);
  CHECK(chars_of_order(F, 4).size() == 2);
  CHECK(chars_of_order(F, 24).size() == 8);  // phi(24)
  // the two order-4 characters sit at index (q^2-1)/4 and 3(q^2-1)/4
  auto quartics = chars_of_order(F, 4);
  CHECK(quartics[0].index == 6);
  CHECK(quartics[1].index == 18);
  CHECK(all_nontrivial_chars(F).size() == 23);
  CHECK_THROWS_AS(chars_of_order(F, 5), std::invalid_argument);
}
