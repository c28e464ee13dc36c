#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ffprim {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string u128_to_string(u128 v);
u128 u128_from_string(const std::string& s);

inline double u128_to_double(u128 v) { return static_cast<double>(v); }

u128 gcd_u128(u128 a, u128 b);

// Primes below 1e6, computed once.
const std::vector<std::uint32_t>& small_primes();

/// Multiset of prime factors of `value`, primes strictly increasing.
struct Factorization {
  u128 value = 1;
  std::vector<std::pair<u128, int>> factors;

  int nu() const { return static_cast<int>(factors.size()); }
  bool divides_value(u128 d) const { return d != 0 && value % d == 0; }
  bool has_prime(u128 p) const;
};

/// Deterministic primality test. Certified for every input the library
/// actually factors (all well below 3.3e24, the proven range for the
/// Miller-Rabin witness set used here).
bool is_prime(u128 n);

/// Trial division by primes below 1e6, then Brent-cycle rho on the
/// remaining cofactor. Requires 1 <= t < 2^96.
Factorization factorize(u128 t);

u128 euler_phi(const Factorization& f);
/// Product of the distinct primes of f.
u128 radical(const Factorization& f);
/// Identified with the radical wherever freeness is concerned.
u128 squarefree_part(const Factorization& f);
/// Number of square-free divisors, 2^nu.
u64 W(const Factorization& f);
/// phi(value) / value.
double theta(const Factorization& f);

/// 2^j / (p1...pj)^(1/ell) over the distinct primes p_i <= 2^ell dividing
/// the value; guarantees W(t) <= c_ell(t) * t^(1/ell). Exact prime product,
/// one floating root (1-ulp class accuracy, used only against wide margins).
double c_ell(const Factorization& f, int ell);

/// Square-free divisors d of f.value together with mu(d).
std::vector<std::pair<u128, int>> squarefree_divisors(const Factorization& f);

/// Decompose q as p^a with p prime, a >= 1; returns false if q is not a
/// prime power.
bool prime_power_decompose(u64 q, u64& p, int& a);

}  // namespace ffprim
