#pragma once

#include <cstdint>
#include <vector>

namespace chatelet::detail {

// Dense polynomials over F_p, coefficient of x^i at index i, no trailing zeros.
using PolyP = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const PolyP& f) { return static_cast<int>(f.size()) - 1; }

inline PolyP sub(PolyP a, const PolyP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline PolyP rem(PolyP a, const PolyP& m, std::uint64_t p) {
  const int dm = deg(m);
  const std::uint64_t inv = invmod(m.back(), p);
  for (int i = deg(a); i >= dm; --i) {
    std::uint64_t c = mulmod(a[i], inv, p);
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = (a[i - dm + j] + p - mulmod(c, m[j], p)) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  trim(a);
  return a;
}

inline PolyP quo(PolyP a, const PolyP& m, std::uint64_t p) {
  const int dm = deg(m);
  if (deg(a) < dm) return {};
  PolyP q(deg(a) - dm + 1, 0);
  const std::uint64_t inv = invmod(m.back(), p);
  for (int i = deg(a); i >= dm; --i) {
    std::uint64_t c = mulmod(a[i], inv, p);
    q[i - dm] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = (a[i - dm + j] + p - mulmod(c, m[j], p)) % p;
  }
  trim(q);
  return q;
}

inline PolyP mulmod_poly(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(c);
  return rem(std::move(c), m, p);
}

inline PolyP powmod_poly(PolyP b, std::uint64_t e, const PolyP& m, std::uint64_t p) {
  PolyP r{1};
  b = rem(b, m, p);
  while (e) {
    if (e & 1) r = mulmod_poly(r, b, m, p);
    b = mulmod_poly(b, b, m, p);
    e >>= 1;
  }
  return r;
}

inline PolyP gcd(PolyP a, PolyP b, std::uint64_t p) {
  while (!b.empty()) {
    PolyP r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

// Degrees of the irreducible factors of a squarefree f (distinct-degree factorization).
inline std::vector<int> factor_degrees(PolyP f, std::uint64_t p) {
  std::vector<int> out;
  const PolyP x{0, 1};
  PolyP h = x;
  for (int k = 1; 2 * k <= deg(f); ++k) {
    h = powmod_poly(h, p, f, p);
    PolyP g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      for (int i = 0; i < deg(g) / k; ++i) out.push_back(k);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back(deg(f));
  return out;
}

} // namespace chatelet::detail
