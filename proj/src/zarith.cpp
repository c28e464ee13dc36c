#include "ffprim/zarith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ffprim {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 u128_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("u128_from_string: empty input");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("u128_from_string: not a digit: " + s);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    const std::uint32_t n = 1000000;
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= n; ++i) {
      if (!comp[i]) {
        ps.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i) comp[j] = true;
      }
    }
    return ps;
  }();
  return primes;
}

bool Factorization::has_prime(u128 p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return true;
  return false;
}

namespace {

u128 mulmod(u128 a, u128 b, u128 m) {
  if (m <= UINT64_MAX) {
    return static_cast<u128>(static_cast<u64>(a % m)) * static_cast<u64>(b % m) % m;
  }
  a %= m;
  b %= m;
  u128 r = 0;
  while (b) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

u128 powmod(u128 b, u128 e, u128 m) {
  u128 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u128 n, u128 a) {
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u128 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant; returns a nontrivial factor of odd composite n.
u128 brent_rho(u128 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u128 x = 2, y = 2, q = 1, g = 1, ys = 0;
    u64 r = 1;
    const u64 batch = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += batch) {
        ys = y;
        u64 lim = std::min(batch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u128(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = gcd_u128(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

void factor_rec(u128 n, std::vector<u128>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u128 d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

Factorization factorize(u128 t) {
  if (t < 1 || t >= (static_cast<u128>(1) << 96)) {
    throw std::invalid_argument("factorize: input must satisfy 1 <= t < 2^96, got " +
                                u128_to_string(t));
  }
  Factorization f;
  f.value = t;
  u128 rem = t;
  std::vector<u128> primes;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<u128>(p) * p > rem) break;
    while (rem % p == 0) {
      primes.push_back(p);
      rem /= p;
    }
  }
  if (rem > 1) {
    if (rem < static_cast<u128>(1000000) * 1000000 || is_prime(rem)) {
      // below 1e12 any survivor of the trial division is prime
      primes.push_back(rem);
    } else {
      factor_rec(rem, primes);
    }
  }
  std::sort(primes.begin(), primes.end());
  for (u128 p : primes) {
    if (!f.factors.empty() && f.factors.back().first == p)
      ++f.factors.back().second;
    else
      f.factors.emplace_back(p, 1);
  }
  return f;
}

u128 euler_phi(const Factorization& f) {
  u128 r = 1;
  for (const auto& [p, e] : f.factors) {
    r *= p - 1;
    for (int i = 1; i < e; ++i) r *= p;
  }
  return r;
}

u128 radical(const Factorization& f) {
  u128 r = 1;
  for (const auto& [p, e] : f.factors) r *= p;
  return r;
}

u128 squarefree_part(const Factorization& f) { return radical(f); }

u64 W(const Factorization& f) { return static_cast<u64>(1) << f.nu(); }

double theta(const Factorization& f) {
  double r = 1.0;
  for (const auto& [p, e] : f.factors) {
    double pd = u128_to_double(p);
    r *= (pd - 1.0) / pd;
  }
  return r;
}

double c_ell(const Factorization& f, int ell) {
  if (ell < 1 || ell > 62) throw std::invalid_argument("c_ell: ell out of range");
  const u128 bound = static_cast<u128>(1) << ell;
  int j = 0;
  u128 prod = 1;
  bool overflow = false;
  long double logprod = 0.0L;
  for (const auto& [p, e] : f.factors) {
    if (p <= bound) {
      ++j;
      logprod += std::log(static_cast<long double>(u128_to_double(p)));
      if (!overflow) {
        if (prod > (~static_cast<u128>(0)) / p)
          overflow = true;
        else
          prod *= p;
      }
    }
  }
  long double root;
  if (!overflow) {
    root = std::pow(static_cast<long double>(u128_to_double(prod)),
                    1.0L / static_cast<long double>(ell));
  } else {
    root = std::exp(logprod / ell);
  }
  return static_cast<double>(std::pow(2.0L, j) / root);
}

std::vector<std::pair<u128, int>> squarefree_divisors(const Factorization& f) {
  std::vector<std::pair<u128, int>> out{{1, 1}};
  for (const auto& [p, e] : f.factors) {
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.emplace_back(out[i].first * p, -out[i].second);
  }
  return out;
}

bool prime_power_decompose(u64 q, u64& p, int& a) {
  if (q < 2) return false;
  for (int k = 63; k >= 1; --k) {
    double root = std::pow(static_cast<double>(q), 1.0 / k);
    for (u64 cand = static_cast<u64>(root) > 1 ? static_cast<u64>(root) - 1 : 2;
         cand <= static_cast<u64>(root) + 1; ++cand) {
      if (cand < 2) continue;
      u128 pw = 1;
      bool of = false;
      for (int i = 0; i < k; ++i) {
        pw *= cand;
        if (pw > q) {
          of = true;
          break;
        }
      }
      if (!of && pw == q && is_prime(cand)) {
        p = cand;
        a = k;
        return true;
      }
    }
  }
  return false;
}

}  // namespace ffprim
