#pragma once

#include <algorithm>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/forms.hpp"

namespace chatelet {

// Integer point (y, z, t; u, v) of y^2 - a z^2 = t^2 F(u, v).
struct PointRecord {
  Int y, z, t, u, v;
  auto operator<=>(const PointRecord& o) const {
    auto key = [](const PointRecord& p) { return std::tie(p.u, p.v, p.t, p.y, p.z); };
    if (key(*this) < key(o)) return std::strong_ordering::less;
    if (key(o) < key(*this)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const PointRecord&) const = default;
};

// Sup-norm of (t u^(n/2), t u^(n/2-1) v, ..., t v^(n/2), y, z).
inline Int point_height(const SurfaceSpec& spec, const PointRecord& p) {
  Int m = std::max(abs_int(p.u), abs_int(p.v));
  Int h = abs_int(p.t) * pow_int(m, spec.n() / 2);
  return std::max({h, abs_int(p.y), abs_int(p.z)});
}

inline bool on_surface(const SurfaceSpec& spec, const PointRecord& p) {
  return p.y * p.y - spec.a * p.z * p.z == p.t * p.t * spec.evaluate(p.u, p.v);
}

inline bool is_normalized(const SurfaceSpec& spec, const PointRecord& p) {
  return p.t > 0 && gcd(gcd(p.y, p.z), p.t) == 1 && gcd(p.u, p.v) == 1 && on_surface(spec, p);
}

namespace detail {

// All (y, z) with y^2 - a z^2 = target and |y|, |z| <= bound.
template <class Fn>
void solve_norm_box(const Int& a, const Int& target, const Int& bound, Fn&& fn) {
  Int zmax = bound;
  if (a < 0) {
    if (target < 0) return;
    zmax = std::min(bound, isqrt(target / (-a)));
  }
  for (Int z = -zmax; z <= zmax; ++z) {
    Int y2 = target + a * z * z;
    if (y2 < 0 || !is_square(y2)) continue;
    Int y = isqrt(y2);
    if (y > bound) continue;
    fn(y, z);
    if (y != 0) fn(Int(-y), z);
  }
}

inline Int max_uv(const SurfaceSpec& spec, const Int& bound) {
  Int r;
  mpz_root(r.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(spec.n() / 2));
  return r;
}

// Primitive (u, v) pairs with max(|u|,|v|)^(n/2) <= bound; canonical sign only when `canonical`.
inline std::vector<std::pair<Int, Int>> uv_pairs(const SurfaceSpec& spec, const Int& bound, bool canonical) {
  std::vector<std::pair<Int, Int>> out;
  if (bound < 1) return out;
  const Int m = max_uv(spec, bound);
  for (Int u = -m; u <= m; ++u)
    for (Int v = -m; v <= m; ++v) {
      if (gcd(u, v) != 1) continue;
      if (canonical && !(v > 0 || (v == 0 && u > 0))) continue;
      out.emplace_back(u, v);
    }
  return out;
}

template <class Worker>
void parallel_chunks(std::size_t count, unsigned jobs, Worker&& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    work(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j) {
    std::size_t lo = count * j / jobs, hi = count * (j + 1) / jobs;
    threads.emplace_back([&, j, lo, hi] { work(j, lo, hi); });
  }
  for (auto& t : threads) t.join();
}

} // namespace detail

// One record per rational point: t > 0 and (u, v) with v > 0 or (v = 0, u > 0). Sorted.
inline std::vector<PointRecord> enumerate_points(const SurfaceSpec& spec, const Int& bound, unsigned jobs = 1) {
  const auto pairs = detail::uv_pairs(spec, bound, true);
  const unsigned half = static_cast<unsigned>(spec.n() / 2);
  std::vector<std::vector<PointRecord>> parts(std::max(1u, jobs));
  detail::parallel_chunks(pairs.size(), jobs, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& [u, v] = pairs[i];
      const Int mono = pow_int(std::max(abs_int(u), abs_int(v)), half);
      if (mono > bound) continue;
      const Int f = spec.evaluate(u, v);
      for (Int t = 1; t * mono <= bound; ++t)
        detail::solve_norm_box(spec.a, t * t * f, bound, [&](const Int& y, const Int& z) {
          if (gcd(gcd(y, z), t) == 1) parts[w].push_back({y, z, t, u, v});
        });
    }
  });
  std::vector<PointRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Every quintuple with gcd(y,z,t) = gcd(u,v) = 1 and height <= bound, all signs included.
inline Int raw_quintuple_count(const SurfaceSpec& spec, const Int& bound, unsigned jobs = 1) {
  const auto pairs = detail::uv_pairs(spec, bound, false);
  const unsigned half = static_cast<unsigned>(spec.n() / 2);
  std::vector<Int> counts(std::max(1u, jobs), 0);
  detail::parallel_chunks(pairs.size(), jobs, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& [u, v] = pairs[i];
      const Int mono = pow_int(std::max(abs_int(u), abs_int(v)), half);
      if (mono > bound) continue;
      const Int f = spec.evaluate(u, v);
      const Int tmax = bound / mono;
      for (Int t = -tmax; t <= tmax; ++t) {
        if (t == 0) continue;
        detail::solve_norm_box(spec.a, t * t * f, bound, [&](const Int& y, const Int& z) {
          if (gcd(gcd(y, z), t) == 1) counts[w] += 1;
        });
      }
    }
  });
  Int total = 0;
  for (const auto& c : counts) total += c;
  return total;
}

} // namespace chatelet
