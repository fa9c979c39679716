#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chatelet/errors.hpp"

namespace chatelet {

using Int = mpz_class;
using Rat = mpq_class;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }
inline int sgn(const Int& x) { return ::sgn(x); }

inline Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt of negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline bool fits_i64(const Int& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

inline std::string to_string(const Int& x) { return x.get_str(); }

// Rationals always print as "num/den", including integers.
inline std::string to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// num / den in lowest terms; den may be negative.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Residue of x modulo m > 0 in [0, m).
inline Int mod(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool miller_rabin(const Int& n, unsigned long base) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x, b = base, nm1 = n - 1;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

} // namespace detail

// Deterministic below 3.3e24 (Miller-Rabin on the first 13 prime bases);
// above that GMP's BPSW-based test.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const Int deterministic_limit("3317044064679887385961981");
  if (n < deterministic_limit) {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
      if (!detail::miller_rabin(n, p)) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  Int value;
  int sign = 1;
  std::vector<PrimePower> factors;  // increasing primes

  Int recompose() const {
    Int r = sign;
    for (const auto& f : factors) r *= pow_int(f.prime, f.exponent);
    return r;
  }
};

struct FactorOptions {
  unsigned max_bits = 256;          // composite cofactors above this size raise FactorLimitError
  unsigned rho_attempts = 64;       // polynomial constants tried by Pollard rho
  std::uint64_t rho_steps = 1ull << 24;
};

namespace detail {

inline Int pollard_brent(const Int& n, unsigned long c, std::uint64_t max_steps) {
  Int y = 2, x, ys, q = 1, g = 1;
  const std::uint64_t m = 128;
  std::uint64_t r = 1, steps = 0;
  auto f = [&](Int& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) f(y);
    std::uint64_t k = 0;
    do {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        q = q * abs_int(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    steps += r;
    r *= 2;
  } while (g == 1 && steps < max_steps);
  if (g == n) {
    do {
      f(ys);
      g = gcd(abs_int(x - ys), n);
    } while (g == 1);
  }
  return g;
}

inline void split_into(const Int& n, std::vector<Int>& primes, const FactorOptions& opt) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > opt.max_bits)
    throw FactorLimitError("composite cofactor of " + std::to_string(mpz_sizeinbase(n.get_mpz_t(), 2)) +
                           " bits exceeds the factor limit");
  if (is_square(n)) {
    Int s = isqrt(n);
    split_into(s, primes, opt);
    split_into(s, primes, opt);
    return;
  }
  for (unsigned c = 1; c <= opt.rho_attempts; ++c) {
    Int g = pollard_brent(n, c, opt.rho_steps);
    if (g != 1 && g != n) {
      split_into(g, primes, opt);
      split_into(n / g, primes, opt);
      return;
    }
  }
  throw FactorLimitError("Pollard rho failed to split " + n.get_str());
}

} // namespace detail

inline Factorization factorize(const Int& n, const FactorOptions& opt = {}) {
  if (n == 0) throw DomainError("factorize: n must be nonzero");
  Factorization out;
  out.value = n;
  out.sign = n < 0 ? -1 : 1;
  Int m = abs_int(n);
  auto push = [&](const Int& p, unsigned e) { out.factors.push_back({p, e}); };

  for (std::uint32_t p : detail::small_primes()) {
    if (Int(p) * p > m) break;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    push(p, e);
  }
  if (m == 1) return out;
  static const Int trial_square = Int(1000000) * 1000000;
  if (m < trial_square) {
    push(m, 1);
    return out;
  }
  std::vector<Int> primes;
  detail::split_into(m, primes, opt);
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    push(primes[i], unsigned(j - i));
    i = j;
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

inline unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("valuation: n must be nonzero");
  if (!is_prime(p)) throw DomainError("valuation: p must be prime");
  Int m = n;
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

// Full Kronecker symbol (a/n), any integers.
inline int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

inline bool is_squarefree(const Int& n) {
  if (n == 0) throw DomainError("is_squarefree: n must be nonzero");
  for (const auto& f : factorize(n).factors)
    if (f.exponent > 1) return false;
  return true;
}

// Product of the distinct primes dividing n.
inline Int radical(const Int& n) {
  Int r = 1;
  for (const auto& f : factorize(n).factors) r *= f.prime;
  return r;
}

// The unique squarefree s (sign included) with n = s * k^2.
inline Int squarefree_part(const Int& n) {
  Int s = n < 0 ? -1 : 1;
  for (const auto& f : factorize(n).factors)
    if (f.exponent % 2) s *= f.prime;
  return s;
}

// Discriminant of Q(sqrt(a)) for squarefree a.
inline Int fundamental_discriminant(const Int& a) {
  return mod(a, 4) == 1 ? a : Int(4 * a);
}

// Splitting type of a prime p in Q(sqrt(a)): -1 inert, 0 ramified, 1 split.
inline int splitting_type(const Int& a, const Int& p) { return kronecker(fundamental_discriminant(a), p); }

inline bool is_inert(const Int& a, const Int& p) { return splitting_type(a, p) == -1; }

} // namespace chatelet
