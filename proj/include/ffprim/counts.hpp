#pragma once

#include <set>
#include <string>
#include <vector>

#include "ffprim/ffield.hpp"

namespace ffprim {

/// Per-trace-value census of elements satisfying a predicate. Counts are
/// indexed by base-field element index; they sum to the number of elements
/// satisfying the predicate.
struct TraceCensus {
  u64 q = 0;
  int n = 0;
  std::string label;
  std::vector<u64> by_beta;

  u64 total() const;
  u64 at(u64 beta_index) const { return by_beta.at(beta_index); }
  std::set<u64> support() const;
};

/// Closed form for the number of nonzero squares with prescribed trace.
/// Requires an even pair with prime degree; for n = 2 also beta != 0.
u128 m_beta_closed(const FieldCtx& base, int n, const FieldElem& beta);

/// Exhaustive census of the distinct nonzero squares by trace (each square
/// counted once, enumerated as even generator powers).
TraceCensus census_squares(const Extension& E);
u64 m_beta_brute(const Extension& E, const FieldElem& beta);

/// Number of m-free xi with Tr(xi^2) = beta, by direct enumeration; counts
/// each square target twice (xi and -xi give the same square).
u64 n_beta_brute(const Extension& E, u128 m, const FieldElem& beta);

/// Same quantity through the character expansion
///   N_beta(m)/theta(m) = (1/q) sum_{d|m} mu(d)/phi(d) sum_chi sum_u
///                         conj(psi(u beta)) X_u(chi_d);
/// agrees with the direct count within floating tolerance.
double n_beta_char_expansion(const Extension& E, u128 m, const FieldElem& beta);

/// Number of alpha in F_q with theta1 + alpha*theta2 r-free, a square and
/// not a fourth power (quadratic extensions; r | odd squarefree part of
/// q^2-1).
u64 q_r_count(const Extension& E, u128 r, const FieldElem& theta1, const FieldElem& theta2);
/// The same count through characters of order dividing r and 4.
double q_r_char_expansion(const Extension& E, u128 r, const FieldElem& theta1,
                          const FieldElem& theta2);

/// Census of elements of order (q^n-1)/2 by trace.
TraceCensus census_two_primitive(const Extension& E);
/// Exact set of base-element indices arising as traces of 2-primitive
/// elements.
std::set<u64> two_primitive_trace_set(const Extension& E);

}  // namespace ffprim
