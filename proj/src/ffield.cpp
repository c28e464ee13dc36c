#include "ffprim/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ffprim {

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 modinv(u64 a, u64 p) {
  u64 inv = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return inv;
}

// a mod f over F_p; f monic
Poly poly_mod(Poly a, const Poly& f, u64 p) {
  const int df = static_cast<int>(f.size()) - 1;
  poly_trim(a);
  while (static_cast<int>(a.size()) - 1 >= df) {
    u64 lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - df;
    for (int i = 0; i <= df; ++i) {
      u64 t = a[shift + i] + (p - (lead * f[i]) % p) % p;
      a[shift + i] = static_cast<std::uint32_t>(t % p);
    }
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      u64 t = r[i + j] + static_cast<u64>(a[i]) * b[j];
      r[i + j] = static_cast<std::uint32_t>(t % p);
    }
  }
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod_x(u128 e, const Poly& f, u64 p) {
  // X^e mod f
  Poly base = poly_mod({0, 1}, f, p);
  Poly r = {1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    u64 lead = b.back();
    if (lead != 1) {
      u64 inv = modinv(lead, p);
      for (auto& c : b) c = static_cast<std::uint32_t>(c * inv % p);
    }
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// distinct-degree criterion: X^(p^k) == X mod f, and the relative Frobenius
// fixes nothing below the top for every prime divisor of k
bool poly_irreducible(const Poly& f, u64 p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k == 1) return true;
  u128 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  Poly x = poly_mod({0, 1}, f, p);
  if (poly_powmod_x(pk, f, p) != x) return false;
  std::vector<int> prime_divisors;
  int kk = k;
  for (int r = 2; r * r <= kk; ++r) {
    if (kk % r == 0) {
      prime_divisors.push_back(r);
      while (kk % r == 0) kk /= r;
    }
  }
  if (kk > 1) prime_divisors.push_back(kk);
  for (int r : prime_divisors) {
    u128 pe = 1;
    for (int i = 0; i < k / r; ++i) pe *= p;
    Poly g = poly_powmod_x(pe, f, p);
    Poly diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    poly_trim(diff);
    Poly gc = poly_gcd(f, diff, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::build(u64 p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("FieldCtx: p must be prime");
  if (k < 1) throw std::invalid_argument("FieldCtx: k must be positive");
  u128 sz = 1;
  for (int i = 0; i < k; ++i) {
    sz *= p;
    if (sz > (static_cast<u128>(1) << 31))
      throw std::invalid_argument("FieldCtx: p^k exceeds 2^31");
  }
  FieldCtx F;
  F.p_ = p;
  F.k_ = k;
  F.size_ = static_cast<u64>(sz);

  if (k == 1) {
    F.modulus_ = {0, 1};  // X
  } else {
    bool found = false;
    for (u64 m = 0; m < F.size_; ++m) {
      Poly f(k + 1, 0);
      f[k] = 1;
      u64 t = m;
      for (int i = 0; i < k; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (poly_irreducible(f, p)) {
        F.modulus_ = f;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("FieldCtx: no irreducible polynomial found");
  }

  F.order_fact_ = factorize(F.size_ - 1);

  const u64 M = F.size_ - 1;
  if (M == 1) {
    F.gen_ = F.one();
    return F;
  }
  // constants are never primitive when k >= 2 (their order divides p-1)
  u64 start = (k == 1) ? 2 : p;
  for (u64 idx = start; idx < F.size_; ++idx) {
    FieldElem x = F.from_index(idx);
    bool primitive = true;
    for (const auto& [rho, e] : F.order_fact_.factors) {
      u64 r = static_cast<u64>(rho);
      if (F.pow(x, M / r) == F.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      F.gen_ = x;
      return F;
    }
  }
  throw std::logic_error("FieldCtx: generator search failed");
}

FieldElem FieldCtx::zero() const { return FieldElem{std::vector<std::uint32_t>(k_, 0)}; }

FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(u64 v) const {
  FieldElem x = zero();
  x.c[0] = static_cast<std::uint32_t>(v % p_);
  return x;
}

FieldElem FieldCtx::from_index(u64 idx) const {
  FieldElem x = zero();
  for (int i = 0; i < k_; ++i) {
    x.c[i] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  return x;
}

u64 FieldCtx::index(const FieldElem& x) const {
  u64 idx = 0;
  for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + x.c[i];
  return idx;
}

bool FieldCtx::is_zero(const FieldElem& x) const {
  for (auto v : x.c)
    if (v) return false;
  return true;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (int i = 0; i < k_; ++i) {
    u64 t = static_cast<u64>(r.c[i]) + b.c[i];
    r.c[i] = static_cast<std::uint32_t>(t >= p_ ? t - p_ : t);
  }
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (int i = 0; i < k_; ++i) {
    u64 t = static_cast<u64>(r.c[i]) + p_ - b.c[i];
    r.c[i] = static_cast<std::uint32_t>(t >= p_ ? t - p_ : t);
  }
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const { return sub(zero(), a); }

void FieldCtx::mul_into(const FieldElem& a, const FieldElem& b, FieldElem& out,
                        std::vector<u64>& scratch) const {
  scratch.assign(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < k_; ++j) {
      scratch[i + j] = (scratch[i + j] + static_cast<u64>(a.c[i]) * b.c[j]) % p_;
    }
  }
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    u64 lead = scratch[d];
    if (lead) {
      scratch[d] = 0;
      for (int i = 0; i < k_; ++i) {
        u64 sub = lead * modulus_[i] % p_;
        scratch[d - k_ + i] = (scratch[d - k_ + i] + p_ - sub) % p_;
      }
    }
  }
  out.c.resize(k_);
  for (int i = 0; i < k_; ++i) out.c[i] = static_cast<std::uint32_t>(scratch[i]);
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  FieldElem out;
  std::vector<u64> scratch;
  mul_into(a, b, out, scratch);
  return out;
}

FieldElem FieldCtx::pow(const FieldElem& a, u64 e) const {
  FieldElem r = one();
  FieldElem base = a;
  std::vector<u64> scratch;
  FieldElem tmp;
  while (e) {
    if (e & 1) {
      mul_into(r, base, tmp, scratch);
      std::swap(r, tmp);
    }
    mul_into(base, base, tmp, scratch);
    std::swap(base, tmp);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw std::domain_error("FieldCtx::inv: zero has no inverse");
  return pow(a, order() - 1);
}

FieldElem FieldCtx::trace_to_subfield(int d, const FieldElem& x) const {
  if (d < 1 || k_ % d != 0)
    throw std::invalid_argument("trace_to_subfield: degree must divide k");
  u64 qs = 1;
  for (int i = 0; i < d; ++i) qs *= p_;
  FieldElem acc = x;
  FieldElem y = x;
  for (int i = 1; i < k_ / d; ++i) {
    y = pow(y, qs);
    acc = add(acc, y);
  }
  return acc;
}

u64 FieldCtx::element_order(const FieldElem& x) const {
  if (is_zero(x)) throw std::domain_error("element_order: zero");
  const u64 M = order();
  if (has_dlog()) {
    return M / std::gcd(dlog(x), M);
  }
  u64 ord = M;
  for (const auto& [rho, e] : order_fact_.factors) {
    u64 r = static_cast<u64>(rho);
    for (int i = 0; i < e; ++i) {
      if (ord % r == 0 && pow(x, ord / r) == one())
        ord /= r;
      else
        break;
    }
  }
  return ord;
}

bool FieldCtx::is_m_free(const FieldElem& x, u128 m) const {
  const u64 M = order();
  if (m == 0 || M % m != 0) throw std::invalid_argument("is_m_free: m must divide p^k-1");
  u64 cofactor = M / element_order(x);
  return gcd_u128(m, cofactor) == 1;
}

bool FieldCtx::is_two_primitive(const FieldElem& x) const {
  if (p_ == 2) throw std::domain_error("is_two_primitive: requires odd characteristic");
  if (is_zero(x)) return false;
  return element_order(x) == order() / 2;
}

void FieldCtx::ensure_dlog() const {
  if (has_dlog()) return;
  if (size_ > (1u << 24))
    throw std::logic_error("ensure_dlog: field too large for a full table");
  dlog_.assign(size_, -1);
  antilog_.assign(size_ - 1, 0);
  FieldElem x = one();
  std::vector<u64> scratch;
  FieldElem tmp;
  for (u64 e = 0; e < size_ - 1; ++e) {
    u64 idx = index(x);
    dlog_[idx] = static_cast<std::int32_t>(e);
    antilog_[e] = static_cast<std::uint32_t>(idx);
    mul_into(x, gen_, tmp, scratch);
    std::swap(x, tmp);
  }
}

u64 FieldCtx::dlog(const FieldElem& x) const {
  if (!has_dlog()) throw std::logic_error("dlog: table not built");
  if (is_zero(x)) throw std::domain_error("dlog: zero");
  return static_cast<u64>(dlog_[index(x)]);
}

FieldElem FieldCtx::antilog(u64 e) const {
  if (!has_dlog()) throw std::logic_error("antilog: table not built");
  return from_index(antilog_[e % order()]);
}

std::string FieldCtx::to_string(const FieldElem& x) const {
  const bool imag = (k_ == 2 && modulus_.size() == 3 && modulus_[0] == 1 && modulus_[1] == 0);
  const char* var = imag ? "i" : "x";
  std::string s;
  for (int i = 0; i < k_; ++i) {
    if (!x.c[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(x.c[i]);
    } else {
      if (x.c[i] != 1) s += std::to_string(x.c[i]);
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  if (s.empty()) s = "0";
  return s;
}

// ---------------------------------------------------------------------------

Extension Extension::build(u64 q, int n, bool with_dlog) {
  u64 p;
  int a;
  if (!prime_power_decompose(q, p, a))
    throw std::invalid_argument("Extension: q must be a prime power");
  if (n < 1) throw std::invalid_argument("Extension: n must be positive");
  Extension E;
  E.q_ = q;
  E.n_ = n;
  E.top_ = FieldCtx::build(p, a * n);
  E.base_ = FieldCtx::build(p, a);
  if (with_dlog) E.top_.ensure_dlog();

  // embedding root of the base modulus, searched over the subfield of size q
  const FieldCtx& T = E.top_;
  const u64 M = T.order();
  const u64 step = M / (q - 1);
  FieldElem root;
  bool found = false;
  auto eval_base_modulus = [&](const FieldElem& x) {
    FieldElem acc = T.from_int(E.base_.modulus()[a]);  // leading coefficient
    for (int i = a - 1; i >= 0; --i) {
      acc = T.mul(acc, x);
      acc = T.add(acc, T.from_int(E.base_.modulus()[i]));
    }
    return acc;
  };
  if (T.is_zero(eval_base_modulus(T.zero()))) {
    root = T.zero();
    found = true;
  } else {
    FieldElem g_step = T.pow(T.generator(), step);
    FieldElem x = T.one();
    for (u64 t = 0; t < q - 1; ++t) {
      if (T.is_zero(eval_base_modulus(x))) {
        root = x;
        found = true;
        break;
      }
      x = T.mul(x, g_step);
    }
  }
  if (!found) throw std::logic_error("Extension: no embedding root found");

  E.embed_pow_.resize(a);
  E.embed_pow_[0] = T.one();
  for (int i = 1; i < a; ++i) E.embed_pow_[i] = T.mul(E.embed_pow_[i - 1], root);

  for (u64 idx = 0; idx < q; ++idx) {
    FieldElem b = E.base_.from_index(idx);
    E.base_index_of_[T.index(E.embed(b))] = idx;
  }

  E.trace_basis_.resize(T.k());
  for (int j = 0; j < T.k(); ++j) {
    FieldElem xj = T.zero();
    xj.c[j] = 1;
    FieldElem tr = T.trace_to_subfield(a, xj);
    auto it = E.base_index_of_.find(T.index(tr));
    if (it == E.base_index_of_.end())
      throw std::logic_error("Extension: trace fell outside the base field");
    E.trace_basis_[j] = E.base_.from_index(it->second);
  }
  return E;
}

FieldElem Extension::embed(const FieldElem& b) const {
  const FieldCtx& T = top_;
  FieldElem acc = T.zero();
  for (int i = 0; i < base_.k(); ++i) {
    if (!b.c[i]) continue;
    FieldElem term = embed_pow_[i];
    for (auto& cc : term.c)
      cc = static_cast<std::uint32_t>(static_cast<u64>(cc) * b.c[i] % T.p());
    acc = T.add(acc, term);
  }
  return acc;
}

bool Extension::in_base(const FieldElem& x) const {
  return base_index_of_.count(top_.index(x)) > 0;
}

FieldElem Extension::to_base(const FieldElem& x) const {
  auto it = base_index_of_.find(top_.index(x));
  if (it == base_index_of_.end())
    throw std::domain_error("Extension::to_base: element not in the base field");
  return base_.from_index(it->second);
}

FieldElem Extension::trace(const FieldElem& x) const {
  return base_.from_index(trace_index(x));
}

u64 Extension::trace_index(const FieldElem& x) const {
  const u64 p = base_.p();
  const int a = base_.k();
  std::uint32_t acc[32] = {0};
  for (int j = 0; j < top_.k(); ++j) {
    const u64 cj = x.c[j];
    if (!cj) continue;
    const auto& tb = trace_basis_[j].c;
    for (int i = 0; i < a; ++i) acc[i] = static_cast<std::uint32_t>((acc[i] + cj * tb[i]) % p);
  }
  u64 idx = 0;
  for (int i = a - 1; i >= 0; --i) idx = idx * p + acc[i];
  return idx;
}

std::pair<FieldElem, FieldElem> Extension::basis_with_traces(const FieldElem& beta) const {
  if (n_ != 2) throw std::invalid_argument("basis_with_traces: quadratic extensions only");
  if (base_.is_zero(beta)) throw std::invalid_argument("basis_with_traces: beta must be nonzero");
  const FieldCtx& T = top_;
  const u64 beta_idx = base_.index(beta);
  FieldElem theta1;
  bool found1 = false;
  u64 i1 = 0;
  for (u64 idx = 1; idx < T.size(); ++idx) {
    FieldElem x = T.from_index(idx);
    if (trace_index(x) == beta_idx) {
      theta1 = x;
      i1 = idx;
      found1 = true;
      break;
    }
  }
  if (!found1) throw std::logic_error("basis_with_traces: trace is onto, search failed");
  FieldElem inv1 = T.inv(theta1);
  for (u64 idx = 1; idx < T.size(); ++idx) {
    if (idx == i1) continue;
    FieldElem x = T.from_index(idx);
    FieldElem ratio = T.mul(x, inv1);
    if (!in_base(ratio)) {
      FieldElem quot = base_.mul(trace(x), base_.inv(beta));
      FieldElem corr = T.mul(embed(quot), theta1);
      FieldElem theta2 = T.sub(x, corr);
      return {theta1, theta2};
    }
  }
  throw std::logic_error("basis_with_traces: no independent element");
}

u128 Extension::Q() const {
  u128 qn = 1;
  for (int i = 0; i < n_; ++i) qn *= q_;
  return (qn - 1) / (q_ - 1);
}

FieldElem Extension::scale_to_primitive(const FieldElem& xi) const {
  if (n_ < 3 || !is_prime(static_cast<u64>(n_)))
    throw std::invalid_argument("scale_to_primitive: n must be an odd prime");
  if (!top_.is_m_free(xi, Q()))
    throw std::invalid_argument("scale_to_primitive: xi must be Q-free");
  const u64 M = top_.order();
  for (u64 idx = 1; idx < q_; ++idx) {
    FieldElem c = base_.from_index(idx);
    FieldElem cx = top_.mul(embed(c), xi);
    if (top_.element_order(cx) == M) return c;
  }
  throw std::logic_error("scale_to_primitive: no scaling factor exists");
}

FieldElem Extension::scale_to_primitive_constructive(const FieldElem& xi) const {
  if (n_ < 3 || !is_prime(static_cast<u64>(n_)))
    throw std::invalid_argument("scale_to_primitive: n must be an odd prime");
  u128 Qv = Q();
  if (!top_.is_m_free(xi, Qv))
    throw std::invalid_argument("scale_to_primitive: xi must be Q-free");
  const u64 M = top_.order();
  // L collects the full prime-power parts of q-1 at primes where xi is free;
  // xi is a power at the remaining primes, which form the complement.
  u64 L = 1;
  for (const auto& [rho, e] : factorize(q_ - 1).factors) {
    u64 r = static_cast<u64>(rho);
    if (top_.is_m_free(xi, r)) {
      for (int i = 0; i < e; ++i) L *= r;
    }
  }
  u128 expo = (Qv % M) * (L % M) % M;
  FieldElem c_top = top_.pow(top_.generator(), static_cast<u64>(expo));
  FieldElem c = to_base(c_top);
  FieldElem cx = top_.mul(c_top, xi);
  if (top_.element_order(cx) != M)
    throw std::logic_error("scale_to_primitive_constructive: scaling failed");
  return c;
}

}  // namespace ffprim
