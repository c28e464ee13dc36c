#include "ffprim/chars.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ffprim {

namespace {

constexpr u64 kCharFieldCap = 1u << 20;

struct KahanComplex {
  double sr = 0, cr = 0, si = 0, ci = 0;
  void add(std::complex<double> x) {
    double yr = x.real() - cr;
    double tr = sr + yr;
    cr = (tr - sr) - yr;
    sr = tr;
    double yi = x.imag() - ci;
    double ti = si + yi;
    ci = (ti - si) - yi;
    si = ti;
  }
  std::complex<double> value() const { return {sr, si}; }
};

void require_char_field(const FieldCtx& F) {
  if (F.size() > kCharFieldCap)
    throw std::logic_error("character sums are limited to fields of at most 2^20 elements");
  F.ensure_dlog();
}

}  // namespace

CharSpec trivial_char(const FieldCtx&) { return CharSpec{1, 0}; }

CharSpec quadratic_char(const FieldCtx& F) {
  u64 M = F.order();
  if (M % 2 != 0) throw std::invalid_argument("quadratic_char: group order is odd");
  return CharSpec{2, M / 2};
}

std::vector<CharSpec> chars_of_order(const FieldCtx& F, u64 d) {
  u64 M = F.order();
  if (d == 0 || M % d != 0) throw std::invalid_argument("chars_of_order: d must divide p^k-1");
  std::vector<CharSpec> out;
  u64 step = M / d;
  for (u64 u = 0; u < d; ++u) {
    if (std::gcd(u, d) == 1 || (d == 1 && u == 0)) out.push_back(CharSpec{d, step * u});
  }
  if (d == 1) out = {CharSpec{1, 0}};
  return out;
}

std::vector<CharSpec> all_nontrivial_chars(const FieldCtx& F) {
  std::vector<CharSpec> out;
  u64 M = F.order();
  for (u64 j = 1; j < M; ++j) out.push_back(CharSpec{M / std::gcd(j, M), j});
  return out;
}

CharSpec char_product(const FieldCtx& F, const CharSpec& a, const CharSpec& b) {
  u64 M = F.order();
  u64 j = (a.index + b.index) % M;
  return CharSpec{j == 0 ? 1 : M / std::gcd(j, M), j};
}

CharTable::CharTable(const FieldCtx& F) : F_(&F) {
  require_char_field(F);
  const u64 M = F.order();
  const u64 p = F.p();
  zetaM_.resize(M);
  for (u64 t = 0; t < M; ++t) {
    double a = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(M);
    zetaM_[t] = {std::cos(a), std::sin(a)};
  }
  zetap_.resize(p);
  for (u64 t = 0; t < p; ++t) {
    double a = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p);
    zetap_[t] = {std::cos(a), std::sin(a)};
  }
  tr0_basis_.resize(F.k());
  for (int j = 0; j < F.k(); ++j) {
    FieldElem xj = F.zero();
    xj.c[j] = 1;
    FieldElem t = F.trace_to_subfield(1, xj);
    tr0_basis_[j] = t.c[0];
  }
}

u64 CharTable::abs_trace(const FieldElem& x) const {
  u64 acc = 0;
  const u64 p = F_->p();
  for (int j = 0; j < F_->k(); ++j) acc += static_cast<u64>(x.c[j]) * tr0_basis_[j] % p;
  return acc % p;
}

std::complex<double> CharTable::psi(const FieldElem& x) const { return zetap_[abs_trace(x)]; }

std::complex<double> CharTable::chi(const CharSpec& c, const FieldElem& x) const {
  if (F_->is_zero(x)) return {0.0, 0.0};
  return chi_at_log(c, F_->dlog(x));
}

std::complex<double> CharTable::chi_at_log(const CharSpec& c, u64 e) const {
  const u64 M = F_->order();
  return zetaM_[c.index % M * (e % M) % M];
}

int CharTable::chi2_sign(const FieldElem& x) const {
  if (F_->is_zero(x)) return 0;
  return (F_->dlog(x) % 2 == 0) ? 1 : -1;
}

std::complex<double> canonical_psi(const FieldCtx& F, const FieldElem& x) {
  FieldElem t = F.trace_to_subfield(1, x);
  double a = 2.0 * std::numbers::pi * static_cast<double>(t.c[0]) / static_cast<double>(F.p());
  return {std::cos(a), std::sin(a)};
}

SumValue gauss_quadratic(const FieldCtx& F, const FieldElem& u) {
  require_char_field(F);
  CharTable T(F);
  SumValue out;
  if (F.is_zero(u)) {
    out.v = static_cast<double>(F.size());
    out.exact_integer = true;
    out.degenerate = true;
    return out;
  }
  KahanComplex acc;
  acc.add(T.psi(F.zero()));  // xi = 0 contributes psi(0) = 1
  const u64 M = F.order();
  const u64 eu = F.dlog(u);
  for (u64 e = 0; e < M; ++e) {
    // u * xi^2 for xi = g^e
    acc.add(T.psi(F.antilog((eu + 2 * e) % M)));
  }
  out.v = acc.value();
  out.err_budget = 1e-6 * static_cast<double>(F.size());
  return out;
}

SumValue gauss_general(const FieldCtx& F, const CharSpec& chi) {
  require_char_field(F);
  CharTable T(F);
  KahanComplex acc;
  const u64 M = F.order();
  for (u64 e = 0; e < M; ++e) {
    acc.add(T.chi_at_log(chi, e) * T.psi(F.antilog(e)));
  }
  SumValue out;
  out.v = acc.value();
  out.err_budget = 1e-6 * static_cast<double>(M);
  return out;
}

SumValue mixed_sum_X(const FieldCtx& F, const CharSpec& chi, const FieldElem& u) {
  require_char_field(F);
  CharTable T(F);
  KahanComplex acc;
  const u64 M = F.order();
  if (F.is_zero(u)) {
    // psi factor is 1; the sum collapses by orthogonality
    SumValue out;
    if (chi.trivial()) {
      out.v = static_cast<double>(M);
    } else {
      out.v = 0.0;
    }
    out.exact_integer = true;
    return out;
  }
  const u64 eu = F.dlog(u);
  for (u64 e = 0; e < M; ++e) {
    acc.add(T.chi_at_log(chi, e) * T.psi(F.antilog((eu + 2 * e) % M)));
  }
  SumValue out;
  out.v = acc.value();
  out.err_budget = 1e-6 * static_cast<double>(M);
  return out;
}

SumValue katz_sum(const Extension& E, const FieldElem& theta, const CharSpec& chi) {
  const FieldCtx& F = E.top();
  require_char_field(F);
  if (E.n() != 2) throw std::invalid_argument("katz_sum: quadratic extensions only");
  if (E.in_base(theta)) throw std::invalid_argument("katz_sum: theta must generate the extension");
  if (chi.trivial()) throw std::invalid_argument("katz_sum: chi must be nontrivial");
  CharTable T(F);
  KahanComplex acc;
  for (u64 a = 0; a < E.q(); ++a) {
    FieldElem x = F.add(theta, E.embed(E.base().from_index(a)));
    acc.add(T.chi(chi, x));
  }
  SumValue out;
  out.v = acc.value();
  out.err_budget = 1e-6 * static_cast<double>(E.q());
  return out;
}

ModulusIdentity modulus_identity_check(const FieldCtx& F, const CharSpec& chi,
                                       const FieldElem& b) {
  require_char_field(F);
  if (chi.trivial()) throw std::invalid_argument("modulus_identity_check: chi must be nontrivial");
  if (F.is_zero(b)) throw std::invalid_argument("modulus_identity_check: b must be nonzero");
  CharTable T(F);
  ModulusIdentity out;
  SumValue Xb = mixed_sum_X(F, chi, b);
  out.lhs = std::norm(Xb.v);

  // C(chi) = sum chi(xi) chi2(xi^2 - 1); the xi = +-1 terms vanish
  KahanComplex accC;
  const u64 M = F.order();
  const FieldElem one = F.one();
  for (u64 e = 0; e < M; ++e) {
    FieldElem sq = F.antilog(2 * e % M);
    FieldElem t = F.sub(sq, one);
    int s = T.chi2_sign(t);
    if (s == 0) continue;
    accC.add(T.chi_at_log(chi, e) * static_cast<double>(s));
  }
  out.C.v = accC.value();
  out.C.err_budget = 1e-6 * static_cast<double>(M);

  std::complex<double> chi_m1 = T.chi(chi, F.neg(one));
  std::complex<double> g2 = gauss_quadratic(F, one).v;
  double qn = static_cast<double>(F.size());
  out.rhs = (1.0 + chi_m1) * qn + static_cast<double>(T.chi2_sign(b)) * g2 * out.C.v;
  return out;
}

PairedBound paired_sum_bound_check(const Extension& E, const CharSpec& chi) {
  const FieldCtx& F = E.top();
  require_char_field(F);
  if (E.q() % 4 != 1) throw std::invalid_argument("paired_sum_bound_check: q must be 1 mod 4");
  FieldElem c = E.embed(E.base().find_nonsquare());
  PairedBound out;
  out.x1_abs = std::abs(mixed_sum_X(F, chi, F.one()).v);
  out.xc_abs = std::abs(mixed_sum_X(F, chi, c).v);
  out.bound = 2.0 * std::sqrt(2.0) * std::pow(static_cast<double>(E.q()), E.n() / 2.0);
  out.holds = out.x1_abs + out.xc_abs <= out.bound + 1e-6;
  return out;
}

int eps1(u64 q) { return q % 4 == 3 ? 1 : -1; }

int eps2(u64 p, int a) {
  if (p % 4 == 1) {
    return (a % 2 == 1) ? 1 : -1;  // +1 for nonsquare q, -1 for square q
  }
  // p = 3 mod 4: only even a keeps the sum real; +1 for a square that is not
  // a fourth power, -1 for a fourth power
  if (a % 2 != 0) throw std::invalid_argument("eps2: p = 3 mod 4 requires square q");
  return (a % 4 == 2) ? 1 : -1;
}

}  // namespace ffprim
