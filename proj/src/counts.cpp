#include "ffprim/counts.hpp"

#include <complex>
#include <numeric>
#include <stdexcept>

#include "ffprim/chars.hpp"

namespace ffprim {

u64 TraceCensus::total() const {
  u64 t = 0;
  for (u64 c : by_beta) t += c;
  return t;
}

std::set<u64> TraceCensus::support() const {
  std::set<u64> s;
  for (u64 i = 0; i < by_beta.size(); ++i)
    if (by_beta[i]) s.insert(i);
  return s;
}

namespace {

bool even_pair(u64 q, int n) {
  // (q^n - 1)/2 even: n = 2, or n odd with q = 1 mod 4
  if (q % 2 == 0) return false;
  if (n == 2) return true;
  return n % 2 == 1 && q % 4 == 1;
}

int eta_sign(const FieldCtx& base, const FieldElem& beta) {
  // quadratic character of the base field
  if (base.is_zero(beta)) return 0;
  return base.pow(beta, base.order() / 2) == base.one() ? 1 : -1;
}

u128 ipow_u128(u64 b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

u128 m_beta_closed(const FieldCtx& base, int n, const FieldElem& beta) {
  const u64 q = base.size();
  if (!is_prime(static_cast<u64>(n)))
    throw std::invalid_argument("m_beta_closed: n must be prime");
  if (!even_pair(q, n))
    throw std::invalid_argument("m_beta_closed: (q,n) must be an even pair");
  if (n == 2) {
    if (base.is_zero(beta)) throw std::invalid_argument("m_beta_closed: beta must be nonzero for n=2");
    int e1 = (q % 4 == 3) ? 1 : -1;
    return (static_cast<u128>(q) - e1) / 2;
  }
  u128 qn1 = ipow_u128(q, n - 1);
  if (base.is_zero(beta)) return (qn1 - 1) / 2;
  u128 half = ipow_u128(q, (n - 1) / 2);
  int s = eta_sign(base, beta);
  return s > 0 ? (qn1 + half) / 2 : (qn1 - half) / 2;
}

TraceCensus census_squares(const Extension& E) {
  const FieldCtx& F = E.top();
  const u64 M = F.order();
  TraceCensus c;
  c.q = E.q();
  c.n = E.n();
  c.label = "nonzero-square";
  c.by_beta.assign(E.q(), 0);
  FieldElem g2 = F.mul(F.generator(), F.generator());
  FieldElem x = F.one();
  FieldElem tmp;
  std::vector<u64> scratch;
  for (u64 t = 0; t < M / 2; ++t) {
    c.by_beta[E.trace_index(x)]++;
    F.mul_into(x, g2, tmp, scratch);
    std::swap(x, tmp);
  }
  return c;
}

u64 m_beta_brute(const Extension& E, const FieldElem& beta) {
  return census_squares(E).at(E.base().index(beta));
}

u64 n_beta_brute(const Extension& E, u128 m, const FieldElem& beta) {
  const FieldCtx& F = E.top();
  const u64 M = F.order();
  if (m == 0 || M % m != 0) throw std::invalid_argument("n_beta_brute: m must divide q^n-1");
  const u64 beta_idx = E.base().index(beta);
  u64 count = 0;
  FieldElem x = F.one();
  FieldElem tmp;
  std::vector<u64> scratch;
  for (u64 e = 0; e < M; ++e) {
    if (F.is_m_free(x, m) && E.trace_index(F.mul(x, x)) == beta_idx) ++count;
    F.mul_into(x, F.generator(), tmp, scratch);
    std::swap(x, tmp);
  }
  return count;
}

double n_beta_char_expansion(const Extension& E, u128 m, const FieldElem& beta) {
  const FieldCtx& F = E.top();
  const FieldCtx& B = E.base();
  const u64 M = F.order();
  if (m == 0 || M % m != 0)
    throw std::invalid_argument("n_beta_char_expansion: m must divide q^n-1");
  Factorization mf = factorize(m);
  CharTable T(F);

  std::complex<double> total{0, 0};
  for (const auto& [d, mu] : squarefree_divisors(mf)) {
    u64 du = static_cast<u64>(d);
    double coeff = static_cast<double>(mu) / u128_to_double(euler_phi(factorize(d)));
    std::complex<double> inner{0, 0};
    for (const auto& chi : chars_of_order(F, du)) {
      for (u64 ui = 0; ui < E.q(); ++ui) {
        FieldElem u = B.from_index(ui);
        std::complex<double> pb = std::conj(canonical_psi(B, B.mul(u, beta)));
        std::complex<double> X = mixed_sum_X(F, chi, E.embed(u)).v;
        inner += pb * X;
      }
    }
    total += coeff * inner;
  }
  double thetam = theta(mf);
  return (total.real() * thetam) / static_cast<double>(E.q());
}

u64 q_r_count(const Extension& E, u128 r, const FieldElem& theta1, const FieldElem& theta2) {
  const FieldCtx& F = E.top();
  const u64 M = F.order();
  if (E.n() != 2) throw std::invalid_argument("q_r_count: quadratic extensions only");
  u64 odd_part = M;
  while (odd_part % 2 == 0) odd_part /= 2;
  u128 q2prime = squarefree_part(factorize(odd_part));
  if (r == 0 || q2prime % r != 0)
    throw std::invalid_argument("q_r_count: r must divide the odd squarefree part of q^2-1");
  F.ensure_dlog();
  u64 count = 0;
  for (u64 a = 0; a < E.q(); ++a) {
    FieldElem x = F.add(theta1, F.mul(E.embed(E.base().from_index(a)), theta2));
    u64 e = F.dlog(x);
    if (e % 4 != 2) continue;  // squares that are not fourth powers
    if (F.is_m_free(x, r)) ++count;
  }
  return count;
}

double q_r_char_expansion(const Extension& E, u128 r, const FieldElem& theta1,
                          const FieldElem& theta2) {
  const FieldCtx& F = E.top();
  const FieldCtx& B = E.base();
  const u64 M = F.order();
  if (E.n() != 2) throw std::invalid_argument("q_r_char_expansion: quadratic extensions only");
  u64 odd_part = M;
  while (odd_part % 2 == 0) odd_part /= 2;
  Factorization rf = factorize(r);
  if (r == 0 || squarefree_part(factorize(odd_part)) % r != 0)
    throw std::invalid_argument("q_r_char_expansion: r must divide the odd squarefree part");
  CharTable T(F);

  // weights 2*l_delta: +1 for delta in {1,2}, -1 for delta = 4
  std::vector<std::pair<CharSpec, double>> quartics;
  quartics.emplace_back(trivial_char(F), 1.0);
  quartics.emplace_back(quadratic_char(F), 1.0);
  for (const auto& eta : chars_of_order(F, 4)) quartics.emplace_back(eta, -1.0);

  std::complex<double> total{0, 0};
  for (const auto& [d, mu] : squarefree_divisors(rf)) {
    u64 du = static_cast<u64>(d);
    double coeff = static_cast<double>(mu) / u128_to_double(euler_phi(factorize(d)));
    std::complex<double> inner{0, 0};
    for (const auto& chi_d : chars_of_order(F, du)) {
      for (const auto& [chi_delta, weight] : quartics) {
        CharSpec prod = char_product(F, chi_d, chi_delta);
        std::complex<double> Y{0, 0};
        for (u64 a = 0; a < E.q(); ++a) {
          FieldElem x = F.add(theta1, F.mul(E.embed(B.from_index(a)), theta2));
          Y += T.chi(prod, x);
        }
        inner += weight * Y;
      }
    }
    total += coeff * inner;
  }
  return total.real() * theta(rf) / 4.0;
}

TraceCensus census_two_primitive(const Extension& E) {
  const FieldCtx& F = E.top();
  const u64 M = F.order();
  TraceCensus c;
  c.q = E.q();
  c.n = E.n();
  c.label = "2-primitive";
  c.by_beta.assign(E.q(), 0);
  FieldElem x = F.one();
  FieldElem tmp;
  std::vector<u64> scratch;
  const FieldElem& g = F.generator();
  for (u64 e = 0; e < M; ++e) {
    if (std::gcd(e, M) == 2) c.by_beta[E.trace_index(x)]++;
    F.mul_into(x, g, tmp, scratch);
    std::swap(x, tmp);
  }
  return c;
}

std::set<u64> two_primitive_trace_set(const Extension& E) {
  return census_two_primitive(E).support();
}

}  // namespace ffprim
