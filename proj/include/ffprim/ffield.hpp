#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffprim/zarith.hpp"

namespace ffprim {

/// Element of a FieldCtx: coefficient vector in the power basis of the
/// modulus, coefficients reduced mod p, length k.
struct FieldElem {
  std::vector<std::uint32_t> c;

  bool operator==(const FieldElem&) const = default;
};

/// An extension field F_{p^k} with a fixed monic irreducible modulus, a fixed
/// primitive element, the factored group order, and an optional discrete-log
/// table. Immutable after construction apart from the lazily built tables;
/// safe to share across threads once the tables are built (or never built).
class FieldCtx {
 public:
  /// Deterministic construction: the modulus is the first irreducible monic
  /// polynomial of degree k in coefficient-enumeration order (which yields
  /// X^2+1 for p=3, k=2), the generator the first primitive element in
  /// element-index order.
  static FieldCtx build(u64 p, int k);

  u64 p() const { return p_; }
  int k() const { return k_; }
  u64 size() const { return size_; }          // p^k
  u64 order() const { return size_ - 1; }     // multiplicative group order
  const Factorization& order_fact() const { return order_fact_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const FieldElem& generator() const { return gen_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(u64 v) const;  // constant v mod p
  FieldElem from_index(u64 idx) const;
  u64 index(const FieldElem& x) const;
  bool is_zero(const FieldElem& x) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;  // rejects zero
  FieldElem pow(const FieldElem& a, u64 e) const;

  FieldElem frobenius(const FieldElem& a) const { return pow(a, p_); }

  /// Sum of x^(p^(d*i)) for i < k/d: the trace onto the subfield of degree d
  /// over the prime field. Result is an element of this context lying in
  /// that subfield. d must divide k.
  FieldElem trace_to_subfield(int d, const FieldElem& x) const;

  /// Exact multiplicative order, via the factored group order (dlog-free) or
  /// the dlog table when present.
  u64 element_order(const FieldElem& x) const;

  /// gcd(m, (p^k-1)/ord(x)) == 1. m must divide p^k-1.
  bool is_m_free(const FieldElem& x, u128 m) const;

  /// ord(x) == (p^k-1)/2; requires odd p.
  bool is_two_primitive(const FieldElem& x) const;

  /// First element in generator-power order with odd discrete log, which is
  /// the generator itself.
  const FieldElem& find_nonsquare() const { return gen_; }

  bool has_dlog() const { return !dlog_.empty(); }
  /// Builds the full dlog/antilog tables by generator-power enumeration;
  /// permitted for p^k <= 2^24.
  void ensure_dlog() const;
  u64 dlog(const FieldElem& x) const;       // requires table, x nonzero
  FieldElem antilog(u64 e) const;           // generator^e via table

  /// Polynomial-basis rendering; the basis root prints as "i" when the
  /// modulus is X^2+1, as "x" otherwise.
  std::string to_string(const FieldElem& x) const;

  /// In-place multiply helper for hot loops (no allocation when out/scratch
  /// are reused).
  void mul_into(const FieldElem& a, const FieldElem& b, FieldElem& out,
                std::vector<u64>& scratch) const;

 private:
  u64 p_ = 0;
  int k_ = 0;
  u64 size_ = 0;
  std::vector<std::uint32_t> modulus_;
  FieldElem gen_;
  Factorization order_fact_;
  mutable std::vector<std::int32_t> dlog_;
  mutable std::vector<std::uint32_t> antilog_;
};

/// F_{q^n} over F_q with q = p^a: the top field F_{p^(a*n)}, the base field
/// F_{p^a}, an embedding of the base into the top, and the relative trace.
class Extension {
 public:
  static Extension build(u64 q, int n, bool with_dlog = false);

  const FieldCtx& top() const { return top_; }
  const FieldCtx& base() const { return base_; }
  u64 q() const { return q_; }
  int n() const { return n_; }

  FieldElem embed(const FieldElem& base_elem) const;
  /// Inverse of embed; the argument must lie in the embedded subfield.
  FieldElem to_base(const FieldElem& top_elem) const;
  bool in_base(const FieldElem& top_elem) const;

  /// Relative trace onto the base field, returned in base coordinates.
  FieldElem trace(const FieldElem& top_elem) const;
  /// Same, but returning the base element index (hot-loop form).
  u64 trace_index(const FieldElem& top_elem) const;

  /// Basis {theta1, theta2} of a quadratic extension with trace(theta1) =
  /// beta and trace(theta2) = 0; beta nonzero. Deterministic: theta1 is the
  /// first element in index order with the required trace, theta2 is the
  /// first independent element corrected by theta2' - (Tr theta2'/Tr theta1)
  /// * theta1.
  std::pair<FieldElem, FieldElem> basis_with_traces(const FieldElem& beta) const;

  /// For Q-free xi (Q = (q^n-1)/(q-1), n an odd prime), a base-field c with
  /// c*xi primitive. Search form: first c in F_q^* index order that works.
  FieldElem scale_to_primitive(const FieldElem& xi) const;
  /// Constructive form: c = gamma^(Q*L) where L collects the prime-power
  /// parts of q-1 at primes where xi is free.
  FieldElem scale_to_primitive_constructive(const FieldElem& xi) const;

  u128 Q() const;  // (q^n - 1)/(q - 1)

 private:
  u64 q_ = 0;
  int n_ = 0;
  FieldCtx top_;
  FieldCtx base_;
  std::vector<FieldElem> embed_pow_;  // images of the base basis powers
  std::unordered_map<u64, u64> base_index_of_;
  std::vector<FieldElem> trace_basis_;  // base-coord trace of each top basis monomial
};

}  // namespace ffprim
