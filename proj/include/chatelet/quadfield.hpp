#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "chatelet/arith.hpp"

namespace chatelet {

// (x + y sqrt(a)) / 2^half
struct QuadUnit {
  Int x, y;
  bool half = false;
  bool operator==(const QuadUnit&) const = default;
};

struct QuadFieldInfo {
  Int a;
  Int discriminant;
  std::optional<long> h;
  std::optional<long> h_plus;
  QuadUnit unit;        // fundamental unit of the maximal order (real case)
  QuadUnit order_unit;  // fundamental unit of Z[sqrt a] (real case)
  int unit_norm = 0;    // real case
  int omega_a = 2;      // roots of unity: 4 for a=-1, 6 for a=-3, else 2
  bool real() const { return a > 0; }
};

namespace detail {

inline Int unit_norm_of(const QuadUnit& e, const Int& a) {
  Int n = e.x * e.x - a * e.y * e.y;
  return e.half ? Int(n / 4) : n;
}

// Smallest solution of x^2 - a y^2 = +-1 from the period of the continued fraction of sqrt(a).
inline QuadUnit zsqrt_fundamental_unit(const Int& a) {
  const Int a0 = isqrt(a);
  Int m = 0, d = 1, ak = a0;
  Int h_prev = 1, h = a0, k_prev = 0, k = 1;
  while (ak != 2 * a0) {
    m = d * ak - m;
    d = (a - m * m) / d;
    ak = (a0 + m) / d;
    if (ak == 2 * a0) break;
    Int h_next = ak * h + h_prev, k_next = ak * k + k_prev;
    h_prev = h, h = h_next, k_prev = k, k = k_next;
  }
  return {h, k, false};
}

// Fundamental unit of the maximal order: either the Z[sqrt a] unit or its cube root
// (u + t sqrt a)/2 with u, t odd, which can only occur for a = 1 mod 4.
inline QuadUnit maximal_fundamental_unit(const Int& a, const QuadUnit& e1) {
  if (mod(a, 4) != 1) return e1;
  const Int nu = detail::unit_norm_of(e1, a);
  // trace(e^3) = u^3 - 3 N(e) u = 2 x1
  Int guess;
  mpz_root(guess.get_mpz_t(), Int(2 * e1.x).get_mpz_t(), 3);
  for (Int u = guess - 2; u <= guess + 2; ++u) {
    if (u <= 0 || u % 2 == 0) continue;
    if (u * u * u - 3 * nu * u != 2 * e1.x) continue;
    Int t2 = u * u - 4 * nu;
    if (t2 % a != 0) continue;
    t2 /= a;
    if (!is_square(t2)) continue;
    Int t = isqrt(t2);
    if (t % 2 == 0) continue;
    // Confirm e^3 = e1: e^3 = (u(u^2+3a t^2) + t(3u^2+a t^2) sqrt a)/8.
    if (u * (u * u + 3 * a * t * t) == 8 * e1.x && t * (3 * u * u + a * t * t) == 8 * e1.y) return {u, t, true};
  }
  return e1;
}

// Narrow class number of a positive nonsquare discriminant: cycles of reduced forms.
inline long narrow_class_number(const Int& D) {
  const Int s = isqrt(D);
  using Form = std::tuple<Int, Int, Int>;
  std::set<Form> reduced;
  for (Int b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    Int ac = (b * b - D) / 4;  // negative
    Int m = abs_int(ac);
    for (Int aa = 1; aa <= m && aa <= s; ++aa) {
      if (m % aa != 0) continue;
      if (2 * aa + b <= s || 2 * aa - b > s) continue;
      for (int sign : {1, -1}) {
        Int A = sign * aa, C = ac / A;
        if (gcd(gcd(A, b), C) != 1) continue;
        reduced.emplace(A, b, C);
      }
    }
  }
  auto rho = [&](const Form& f) {
    const auto& [A, B, C] = f;
    Int twoc = 2 * abs_int(C);
    Int r = (s + B) % twoc;
    Int b2 = s - r;
    return Form{C, b2, (b2 * b2 - D) / (4 * C)};
  };
  long cycles = 0;
  std::set<Form> seen;
  for (const auto& f : reduced) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    do {
      seen.insert(g);
      g = rho(g);
      if (!reduced.count(g)) throw InvariantViolation("reduction operator left the reduced set");
    } while (g != f);
  }
  return cycles;
}

// Class number of a negative discriminant: primitive reduced forms.
inline long imaginary_class_number(const Int& D) {
  long h = 0;
  const Int bound = isqrt(abs_int(D) / 3);
  for (Int A = 1; A <= bound; ++A)
    for (Int b = -A + 1; b <= A; ++b) {
      if ((b * b - D) % (4 * A) != 0) continue;
      Int C = (b * b - D) / (4 * A);
      if (C < A) continue;
      if (A == C && b < 0) continue;
      if (gcd(gcd(A, b), C) != 1) continue;
      ++h;
    }
  return h;
}

// Bound for |y| over a fundamental domain of the norm-one units acting on the solutions of
// x^2 - a y^2 = n: y^2 <= |n| eta / a, eta = eps or eps^2 when N(eps) = -1.
inline Int norm_search_bound(const Int& n, const Int& a, QuadUnit eps) {
  if (unit_norm_of(eps, a) < 0) {
    if (eps.half) eps = {(eps.x * eps.x + a * eps.y * eps.y) / 2, eps.x * eps.y, true};
    else eps = {eps.x * eps.x + a * eps.y * eps.y, 2 * eps.x * eps.y, false};
  }
  Int eps_up = eps.x + eps.y * (isqrt(a) + 1);
  if (eps.half) eps_up = eps_up / 2 + 1;
  return isqrt(abs_int(n) * eps_up / a) + 1;
}

// Solution of x^2 - a y^2 = target with |y| <= bound, parity constraint x = y mod 2 if same_parity.
inline std::optional<std::pair<Int, Int>> search_norm(const Int& target, const Int& a, const Int& bound,
                                                      bool same_parity) {
  for (Int y = 0; y <= bound; ++y) {
    Int x2 = target + a * y * y;
    if (x2 < 0) {
      if (a < 0) break;
      continue;
    }
    if (!is_square(x2)) continue;
    Int x = isqrt(x2);
    if (same_parity && (x - y) % 2 != 0) continue;
    return std::make_pair(x, y);
  }
  return std::nullopt;
}

// Every prime ideal below the Minkowski bound is principal, i.e. h = 1 (real case).
inline bool minkowski_all_principal(const Int& a, const QuadUnit& eps) {
  const Int D = fundamental_discriminant(a);
  const Int bound = isqrt(D) / 2 + 1;
  const bool half = mod(a, 4) == 1;
  for (std::uint32_t p : small_primes()) {
    if (Int(p) > bound) break;
    if (splitting_type(a, p) == -1) continue;
    const Int target = half ? Int(4 * p) : Int(p);
    bool found = false;
    for (int sign : {1, -1}) {
      Int t = sign * target;
      if (search_norm(t, a, norm_search_bound(t, a, eps), half)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

} // namespace detail

inline QuadFieldInfo field_info(const Int& a) {
  if (a == 0 || a == 1 || !is_squarefree(a)) throw DomainError("field_info: a must be squarefree and not 0 or 1");
  QuadFieldInfo info;
  info.a = a;
  info.discriminant = fundamental_discriminant(a);
  if (a < 0) {
    info.omega_a = a == -1 ? 4 : a == -3 ? 6 : 2;
    info.h = detail::imaginary_class_number(info.discriminant);
    info.h_plus = info.h;
    return info;
  }
  info.omega_a = 2;
  info.order_unit = detail::zsqrt_fundamental_unit(a);
  info.unit = detail::maximal_fundamental_unit(a, info.order_unit);
  info.unit_norm = detail::unit_norm_of(info.unit, a) == -1 ? -1 : 1;
  const long h_plus = detail::narrow_class_number(info.discriminant);
  const long h_cycles = info.unit_norm == -1 ? h_plus : h_plus / 2;
  const bool principal = detail::minkowski_all_principal(a, info.unit);
  if (principal != (h_cycles == 1))
    throw InvariantViolation("class number methods disagree for a = " + a.get_str());
  info.h = principal ? 1 : h_cycles;
  info.h_plus = *info.h * (info.unit_norm == -1 ? 1 : 2);
  return info;
}

// Thread-safe memoized field_info.
inline const QuadFieldInfo& cached_field_info(const Int& a) {
  static std::mutex mu;
  static std::map<std::string, QuadFieldInfo> cache;
  const std::string key = a.get_str();
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  QuadFieldInfo info = field_info(a);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(info)).first->second;
}

struct NegativePell {
  bool solvable = false;
  Int x, y;  // x^2 - a y^2 = -1 when solvable
};

inline NegativePell negative_pell_solvable(const Int& a) {
  if (a <= 1 || !is_squarefree(a)) throw DomainError("negative_pell_solvable: a must be a squarefree integer > 1");
  const QuadFieldInfo& info = cached_field_info(a);
  if (info.unit_norm != -1) return {};
  const QuadUnit& e = info.unit;
  if (!e.half) return {true, e.x, e.y};
  // ((u + t sqrt a)/2)^3 lies in Z[sqrt a] when u, t are odd.
  const Int& u = e.x;
  const Int& t = e.y;
  Int x = u * (u * u + 3 * a * t * t), y = t * (3 * u * u + a * t * t);
  if (x % 8 != 0 || y % 8 != 0) return {};
  return {true, x / 8, y / 8};
}

enum class NormStatus { Representable, NotRepresentable, Unknown };

inline const char* to_string(NormStatus s) {
  switch (s) {
    case NormStatus::Representable: return "representable";
    case NormStatus::NotRepresentable: return "not_representable";
    default: return "unknown";
  }
}

struct NormResult {
  NormStatus status = NormStatus::Unknown;
  Int x, y;            // witness: x^2 - a y^2 = n
  std::string reason;  // set for Unknown
  bool representable() const { return status == NormStatus::Representable; }
};

// Every inert prime divides |n| to an even power.
inline bool inert_parity_ok(const Int& n, const Int& a) {
  for (const auto& pp : factorize(n).factors)
    if (pp.exponent % 2 && is_inert(a, pp.prime)) return false;
  return true;
}

// Is n = x^2 - a y^2 with integers x, y? The search over a unit fundamental domain is
// exhaustive, so a failed search proves non-representability.
inline NormResult is_norm(const Int& n, const Int& a) {
  if (n == 0) throw DomainError("is_norm: n must be nonzero");
  if (a < 0) {
    if (n < 0) return {NormStatus::NotRepresentable, 0, 0, {}};
    if (auto w = detail::search_norm(n, a, isqrt(n / (-a)), false)) return {NormStatus::Representable, w->first, w->second, {}};
    return {NormStatus::NotRepresentable, 0, 0, {}};
  }
  const QuadFieldInfo& info = cached_field_info(a);
  if (!inert_parity_ok(n, a)) return {NormStatus::NotRepresentable, 0, 0, {}};
  if (auto w = detail::search_norm(n, a, detail::norm_search_bound(n, a, info.order_unit), false))
    return {NormStatus::Representable, w->first, w->second, {}};
  return {NormStatus::NotRepresentable, 0, 0, {}};
}

enum class NormOrder {
  Equation,  // integer pairs (y, z) with y^2 - a z^2 = n
  Maximal,   // elements of the ring of integers of norm n
};

// Representations of n by y^2 - a z^2; a > 0 needs a box |y|, |z| <= box.
inline Int r_a_count(const Int& n, const Int& a, std::optional<Int> box = std::nullopt,
                     NormOrder order = NormOrder::Equation) {
  if (n < 1) throw DomainError("r_a_count: n must be positive");
  if (a > 0 && !box) throw DomainError("r_a_count: a > 0 requires a box bound");
  const bool half = order == NormOrder::Maximal && mod(a, 4) == 1;
  const Int target = half ? Int(4 * n) : n;
  const Int zmax = a < 0 ? isqrt(target / (-a)) : *box * (half ? 2 : 1);
  const Int ymax = a < 0 ? Int(0) : *box * (half ? 2 : 1);
  Int count = 0;
  for (Int z = -zmax; z <= zmax; ++z) {
    Int y2 = target + a * z * z;
    if (y2 < 0 || !is_square(y2)) continue;
    Int y = isqrt(y2);
    if (a > 0 && y > ymax) continue;
    if (half && (y - z) % 2 != 0) continue;
    count += y == 0 ? 1 : 2;
  }
  return count;
}

// omega_a * sum_{d | n} chi(d), chi the Kronecker character of the field discriminant.
inline Int r_a_divisor_formula(const Int& n, const Int& a) {
  if (n < 1) throw DomainError("r_a_divisor_formula: n must be positive");
  if (a >= 0) throw DomainError("r_a_divisor_formula: a must be negative");
  const QuadFieldInfo& info = cached_field_info(a);
  if (info.h != 1) throw DomainError("r_a_divisor_formula: class number must be 1");
  Int total = info.omega_a;
  for (const auto& pp : factorize(n).factors) {
    const int chi = kronecker(info.discriminant, pp.prime);
    Int local = 0, power = 1;
    for (unsigned k = 0; k <= pp.exponent; ++k) {
      local += power;
      power *= chi;
    }
    total *= local;
  }
  return total;
}

} // namespace chatelet
