#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ffprim/criteria.hpp"

namespace ffprim {

struct PrimePower {
  u64 q;
  u64 p;
  int a;
};

/// All odd prime powers in [lo, hi], ascending.
std::vector<PrimePower> odd_prime_powers(u64 lo, u64 hi);

/// FFPRIM_THREADS wins over the argument; 0 falls back to the hardware count.
unsigned resolve_threads(unsigned requested = 0);

/// Work-stealing loop over [0, count): each index claimed once, results meant
/// to land in preallocated slots so the outcome is thread-count independent.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct QVerdict {
  u64 q = 0;
  std::string status;
  nlohmann::json detail;
};

struct SweepResult {
  int n = 0;
  u64 q_lo = 0;
  u64 q_hi = 0;
  std::string beta_class;
  std::vector<QVerdict> verdicts;   // one per candidate, ascending in q
  std::vector<u64> survivors;      // pairs still needing direct verification
  u64 candidates = 0;
  u64 plain_failures = 0;          // candidates failing the unsieved criterion
  double wall_ms = 0;
};

/// Applies the analytic pipeline to every odd prime power in [3, qmax]:
/// the unsieved criterion first, then largest-prime-first sieving; whatever
/// survives both is listed for direct verification. beta_class is "zero",
/// "nonzero" or "all".
SweepResult run_sweep(int n, u64 qmax, const std::string& beta_class, unsigned threads = 0);

nlohmann::json sweep_to_json(const SweepResult& r);
std::string sweep_to_csv(const SweepResult& r);

}  // namespace ffprim
