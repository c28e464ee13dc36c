#include "ffprim/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ffprim/report.hpp"

namespace ffprim {

std::vector<PrimePower> odd_prime_powers(u64 lo, u64 hi) {
  std::vector<PrimePower> out;
  if (hi > 1000000000000ULL) throw std::invalid_argument("odd_prime_powers: range too large");
  // sieve of Eratosthenes up to hi
  std::vector<bool> comp(hi + 1, false);
  for (u64 i = 2; i * i <= hi; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= hi; j += i) comp[j] = true;
  for (u64 p = 3; p <= hi; p += 2) {
    if (comp[p]) continue;
    u128 pw = p;
    int a = 1;
    while (pw <= hi) {
      if (pw >= lo) out.push_back(PrimePower{static_cast<u64>(pw), p, a});
      pw *= p;
      ++a;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& x, const PrimePower& y) { return x.q < y.q; });
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("FFPRIM_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  if (requested >= 1) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count ? count : 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

// verdict for one candidate at quadratic degree, nonzero trace class
QVerdict quad_verdict(u64 q) {
  QVerdict v;
  v.q = q;
  CriterionReport plain = check_n2_plain(q);
  if (plain.holds) {
    v.status = "plain-pass";
    v.detail = nlohmann::json(plain);
    return v;
  }
  CriterionReport sieved = greedy_sieve(q, 2, BetaClass::NonZero);
  v.detail["plain"] = nlohmann::json(plain);
  if (sieved.holds) {
    v.status = "sieve-pass";
    v.detail["sieve"] = nlohmann::json(sieved);
  } else {
    v.status = "survivor";
    v.detail["sieve"] = nlohmann::json(sieved);
  }
  return v;
}

// verdict for one candidate at odd prime degree for one trace class
QVerdict odd_degree_verdict(u64 q, int n, BetaClass bc) {
  QVerdict v;
  v.q = q;
  CriterionReport first = bc == BetaClass::NonZero ? check_main(q, n) : check_O_star(q, n);
  if (first.holds) {
    v.status = "plain-pass";
    v.detail = nlohmann::json(first);
    return v;
  }
  v.detail["plain"] = nlohmann::json(first);
  CriterionReport sieved = greedy_sieve(q, n, bc);
  if (sieved.holds) {
    v.status = "sieve-pass";
    v.detail["sieve"] = nlohmann::json(sieved);
  } else {
    v.status = "survivor";
    v.detail["sieve"] = nlohmann::json(sieved);
  }
  return v;
}

QVerdict combine(const QVerdict& a, const QVerdict& b) {
  QVerdict v;
  v.q = a.q;
  bool surv = a.status == "survivor" || b.status == "survivor";
  v.status = surv ? "survivor" : "resolved";
  v.detail["nonzero"] = a.detail;
  v.detail["nonzero_status"] = a.status;
  v.detail["zero"] = b.detail;
  v.detail["zero_status"] = b.status;
  return v;
}

}  // namespace

SweepResult run_sweep(int n, u64 qmax, const std::string& beta_class, unsigned threads) {
  if (n < 2) throw std::invalid_argument("run_sweep: n must be at least 2");
  if (beta_class != "zero" && beta_class != "nonzero" && beta_class != "all")
    throw std::invalid_argument("run_sweep: beta class must be zero, nonzero or all");
  auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.n = n;
  res.q_lo = 3;
  res.q_hi = qmax;
  res.beta_class = beta_class;
  auto candidates = odd_prime_powers(3, qmax);
  res.candidates = candidates.size();
  res.verdicts.resize(candidates.size());

  const bool n_prime = is_prime(static_cast<u64>(n));
  const bool n_odd = n % 2 == 1;

  parallel_for(candidates.size(), resolve_threads(threads), [&](std::size_t i) {
    u64 q = candidates[i].q;
    QVerdict& slot = res.verdicts[i];
    if (!n_prime) {
      slot.q = q;
      slot.status = "degree-reduction";
      slot.detail = nlohmann::json(classify_pair(q, n));
      return;
    }
    if (n == 2) {
      if (beta_class == "zero") {
        slot.q = q;
        slot.status = q == 3 ? "trace-zero-attained" : "no-trace-zero-element";
        slot.detail["note"] =
            "trace zero forces order at most 2(q-1), settled structurally for every q";
        return;
      }
      slot = quad_verdict(q);
      return;
    }
    if (n_odd && q % 4 == 3) {
      slot.q = q;
      slot.status = "odd-pair";
      slot.detail["note"] = "negation reduces to the primitive-trace property";
      return;
    }
    if (beta_class == "all") {
      slot = combine(odd_degree_verdict(q, n, BetaClass::NonZero),
                     odd_degree_verdict(q, n, BetaClass::Zero));
    } else {
      slot = odd_degree_verdict(q, n,
                                beta_class == "zero" ? BetaClass::Zero : BetaClass::NonZero);
    }
  });

  for (const auto& v : res.verdicts) {
    if (v.status == "survivor") res.survivors.push_back(v.q);
    bool plain_failed = false;
    if (v.status == "survivor" || v.status == "sieve-pass") {
      plain_failed = true;
    } else if (v.status == "resolved" && v.detail.contains("nonzero_status")) {
      plain_failed = v.detail["nonzero_status"] != "plain-pass" ||
                     v.detail["zero_status"] != "plain-pass";
    }
    if (plain_failed) ++res.plain_failures;
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

nlohmann::json sweep_to_json(const SweepResult& r) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back(nlohmann::json{{"q", v.q}, {"status", v.status}, {"detail", v.detail}});
  return nlohmann::json{{"n", r.n},
                        {"q_lo", r.q_lo},
                        {"q_hi", r.q_hi},
                        {"beta_class", r.beta_class},
                        {"candidates", r.candidates},
                        {"plain_failures", r.plain_failures},
                        {"survivors", r.survivors},
                        {"wall_ms", r.wall_ms},
                        {"verdicts", verdicts}};
}

std::string sweep_to_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "n,q,status\n";
  for (const auto& v : r.verdicts) out << r.n << "," << v.q << "," << v.status << "\n";
  return out.str();
}

}  // namespace ffprim
