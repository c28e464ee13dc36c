#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "ffprim/zarith.hpp"

namespace ffprim {

enum class BetaClass { Zero, NonZero };

std::string to_label(BetaClass b);

/// Classification of a pair (q, n): degree reductions for composite n, and
/// the odd/even dichotomy (whether (q^n-1)/2 is odd) for prime n.
struct DegreeReduction {
  u128 base;  // ground field size at this step
  int ell;    // prime degree split off
  int m;      // remaining degree
  bool special_case;  // the (q, ell, n) = (3, 2, 4) branch with traces +-1
};

struct PairClass {
  u64 q = 0;
  int n = 0;
  bool n_is_prime = false;
  bool odd_pair = false;   // n odd prime and q = 3 mod 4
  bool even_pair = false;
  int omega = 0;           // number of primes of n with multiplicity
  std::vector<DegreeReduction> chain;
  std::vector<std::string> applicable;
};

PairClass classify_pair(u64 q, int n);

/// One sieve partition: the sieved radical written as kernel * p_1 ... p_s,
/// with the bookkeeping the inequalities consume. "special" tracks the part
/// tied to Q = (q^n-1)/(q-1) for prime degree >= 3, and to q+1 for n = 2.
struct SieveConfig {
  u128 sieved_radical = 1;
  u128 kernel = 1;
  int kernel_nu = 0;
  u128 kernel_special = 1;
  int kernel_special_nu = 0;
  std::vector<u128> primes;  // sieving primes, largest first
  int r_count = 0;           // sieving primes dividing the special part
  double delta = 1.0;        // 1 - sum 1/p_i
  double delta_special = 1.0;

  int s() const { return static_cast<int>(primes.size()); }
  u64 kernel_W() const { return static_cast<u64>(1) << kernel_nu; }
  u64 kernel_special_W() const { return static_cast<u64>(1) << kernel_special_nu; }
  /// Recompute delta from the primes (consistency check).
  double recompute_delta() const;
};

/// Outcome of one criterion evaluation. The verdict holds iff lhs exceeds
/// rhs strictly, with passes within 1e-9 of the boundary demoted to failures.
struct CriterionReport {
  std::string criterion;
  u64 q = 0;
  int n = 0;
  std::optional<BetaClass> beta;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  bool applicable = true;
  std::optional<SieveConfig> sieve;
  nlohmann::json details;
};

/// q^((n-1)/2) > 4 W(q^n-1) - 2 W(Q) - 1, exact integer arithmetic where the
/// sides are integral. Even pairs with prime n, nonzero trace class.
CriterionReport check_main(u64 q, int n);

/// q^(n/2) > 2 W(Q) (q-1), compared exactly by squaring. Even pairs with odd
/// prime n, zero trace class.
CriterionReport check_O_star(u64 q, int n);

enum class SieveTheorem {
  Auto,
  NonzeroGeneric,   // 4((s-1)/d + 2)W(k) - 2((r-1+dQ)/d + 1)W(kQ)
  NonzeroSharp,     // sqrt(2)-improved variant, q = 1 mod 4 and odd prime n
  ZeroGeneric,      // 2((s-1)/d + 2)W(k), partition of rad(Q)
  ZeroSharp,        // sqrt(2)-improved variant
};

/// Builds the partition config: `s` largest primes of `radical_fact` become
/// sieving primes, the rest the kernel; `special` marks the primes counted
/// by the refined terms.
SieveConfig make_sieve_config(const Factorization& radical_fact, int s, const Factorization& special);

/// Evaluates the sieve inequality selected by (n parity, beta class, q mod 4),
/// or the forced theorem. delta <= 0 yields an inapplicable report, never a
/// verdict.
CriterionReport sieve_generic(u64 q, int n, BetaClass beta, const SieveConfig& config,
                              SieveTheorem force = SieveTheorem::Auto);

/// Quadratic-extension criterion without sieving: r = odd squarefree part of
/// q^2-1, r1 its part dividing q+1; branch selected by q mod 4.
CriterionReport check_n2_plain(u64 q);

/// Quadratic-extension sieve over the odd squarefree part of q^2-1. The
/// report's details also carry the simplified kernel-only inequality
/// (informational; not used for verdicts).
CriterionReport sieve_n2(u64 q, const SieveConfig& config);

/// Largest-prime-first sieving: starting from the empty sieving set, move the
/// largest remaining prime into it and re-test while the slack stays
/// positive; first success wins, exhaustion yields a failure report listing
/// every attempt.
CriterionReport greedy_sieve(u64 q, int n, BetaClass beta);

struct ReductionStep {
  double threshold;     // recomputed bound: the criterion holds for q > threshold
  u64 milestone;        // working bound carried to the next step
  std::string description;
};

/// The analytic interval cascades that reduce each sweep to a finite range,
/// with every threshold recomputed from the c_ell constants and slack sums
/// rather than hard-coded.
std::vector<ReductionStep> interval_reduction(int n, BetaClass beta);

struct Verdict {
  enum class Kind { ProvenAnalytic, ProvenByComputation, GenuineException };
  Kind kind = Kind::ProvenAnalytic;
  bool exists = false;
  std::string summary;
  nlohmann::json reports;
  std::optional<std::set<u64>> trace_set;  // base-field element indices
};

/// Full pipeline: classification, analytic criteria, greedy sieving,
/// brute-force escalation. `beta_index` (base-field element index) narrows
/// the question to a single trace value.
Verdict decide_pair(u64 q, int n, std::optional<u64> beta_index = std::nullopt);

}  // namespace ffprim
