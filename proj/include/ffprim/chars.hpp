#pragma once

#include <complex>
#include <vector>

#include "ffprim/ffield.hpp"

namespace ffprim {

/// Multiplicative character of exact order `order`, acting on the fixed
/// generator g by chi(g^t) = exp(2*pi*i * index*t / (p^k-1)). chi(0) = 0.
struct CharSpec {
  u64 order = 1;
  u64 index = 0;  // multiple of (p^k-1)/order with the cofactor coprime to order

  bool trivial() const { return index == 0; }
};

/// Complex sum together with its provenance: exact values come from closed
/// forms, floating ones accumulate roundoff bounded by err_budget.
struct SumValue {
  std::complex<double> v{0.0, 0.0};
  bool exact_integer = false;
  bool degenerate = false;   // e.g. the u = 0 quadratic sum
  double err_budget = 0.0;   // absolute error allowance, 1e-6 per summand class
};

CharSpec trivial_char(const FieldCtx& F);
CharSpec quadratic_char(const FieldCtx& F);
/// All characters of exact order d (d | p^k-1), index-ascending.
std::vector<CharSpec> chars_of_order(const FieldCtx& F, u64 d);
std::vector<CharSpec> all_nontrivial_chars(const FieldCtx& F);
/// Product character (indices add mod p^k-1).
CharSpec char_product(const FieldCtx& F, const CharSpec& a, const CharSpec& b);

/// Evaluation table for one small field (dlog required, size capped at 2^20):
/// roots of unity plus the absolute-trace linear form behind the canonical
/// additive character psi(x) = exp(2*pi*i*Tr0(x)/p).
class CharTable {
 public:
  explicit CharTable(const FieldCtx& F);

  const FieldCtx& field() const { return *F_; }
  std::complex<double> chi(const CharSpec& c, const FieldElem& x) const;
  std::complex<double> chi_at_log(const CharSpec& c, u64 e) const;
  std::complex<double> psi(const FieldElem& x) const;
  /// Quadratic character as a real sign; 0 at zero.
  int chi2_sign(const FieldElem& x) const;
  u64 abs_trace(const FieldElem& x) const;

 private:
  const FieldCtx* F_;
  std::vector<std::complex<double>> zetaM_;  // e(t/M)
  std::vector<std::complex<double>> zetap_;  // e(t/p)
  std::vector<std::uint32_t> tr0_basis_;     // Tr0 of each basis monomial
};

/// Canonical additive character of F (via the absolute trace).
std::complex<double> canonical_psi(const FieldCtx& F, const FieldElem& x);

/// Quadratic Gauss sum sum_xi psi(u * xi^2) over the whole field.
/// u = 0 degenerates to the field size and is flagged.
SumValue gauss_quadratic(const FieldCtx& F, const FieldElem& u);

/// G(chi) = sum_xi chi(xi) psi(xi).
SumValue gauss_general(const FieldCtx& F, const CharSpec& chi);

/// X_u(chi) = sum_xi chi(xi) psi(u xi^2).
SumValue mixed_sum_X(const FieldCtx& F, const CharSpec& chi, const FieldElem& u);

/// B = sum over alpha in the base field of chi(theta + alpha), chi a
/// nontrivial character of the top field of a quadratic extension; theta must
/// generate the extension. Exactly -1 when ord(chi) | q+1, |B| = sqrt(q)
/// otherwise.
SumValue katz_sum(const Extension& E, const FieldElem& theta, const CharSpec& chi);

struct ModulusIdentity {
  double lhs = 0;                     // |X_b(chi)|^2
  std::complex<double> rhs{0, 0};     // (1+chi(-1)) q^n + chi2(b) G(chi2) C(chi)
  SumValue C;                         // sum chi(xi) chi2(xi^2 - 1)
};

/// Both sides of |X_b(chi)|^2 = (1+chi(-1)) q^n + chi2(b) G(chi2) C(chi),
/// evaluated independently.
ModulusIdentity modulus_identity_check(const FieldCtx& F, const CharSpec& chi,
                                       const FieldElem& b);

struct PairedBound {
  double x1_abs = 0;
  double xc_abs = 0;
  double bound = 0;  // 2*sqrt(2)*q^(n/2)
  bool holds = false;
};

/// |X_1(chi)| + |X_c(chi)| <= 2 sqrt(2) q^(n/2) with c a base-field nonsquare;
/// requires q = 1 mod 4 and odd prime degree.
PairedBound paired_sum_bound_check(const Extension& E, const CharSpec& chi);

/// Sign of the quadratic Gauss sum for quadratic extensions: +1 iff
/// q = 3 mod 4.
int eps1(u64 q);
/// Sign for odd prime degree, determined by p mod 4 and whether q = p^a is a
/// square or fourth power (a odd / a = 2 mod 4 / a = 0 mod 4).
int eps2(u64 p, int a);

}  // namespace ffprim
