#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/forms.hpp"
#include "chatelet/points.hpp"
#include "chatelet/quadfield.hpp"
#include "chatelet/torsor.hpp"

namespace chatelet {

struct CountReport {
  Int bound;
  Int raw;    // quintuples, all signs
  Int total;  // raw / 4
  std::map<TorsorLabel, Int> per_label;
  Int zero_locus = 0;
  Int unknown = 0;

  Int screened() const { return zero_locus + unknown; }
  Int labeled() const {
    Int s = 0;
    for (const auto& [l, c] : per_label) s += c;
    return s;
  }
  bool consistent() const { return total == labeled() + screened(); }
};

// N(B) and its split over torsor labels.
inline CountReport count_nb(const SurfaceSpec& spec, const Int& bound, unsigned jobs = 1) {
  CountReport rep;
  rep.bound = bound;
  rep.raw = raw_quintuple_count(spec, bound, jobs);
  if (rep.raw % 4 != 0) throw InvariantViolation("count_nb: raw quintuple count " + rep.raw.get_str() + " is not divisible by 4");
  rep.total = rep.raw / 4;

  const auto points = enumerate_points(spec, bound, jobs);
  std::vector<CountReport> parts(std::max(1u, jobs));
  detail::parallel_chunks(points.size(), jobs, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const LabelResult lr = assign_label(spec, points[k]);
      switch (lr.kind) {
        case LabelKind::Labeled: parts[w].per_label[lr.label] += 1; break;
        case LabelKind::ZeroLocus: parts[w].zero_locus += 1; break;
        case LabelKind::Unknown: parts[w].unknown += 1; break;
      }
    }
  });
  for (const auto& p : parts) {
    for (const auto& [l, c] : p.per_label) rep.per_label[l] += c;
    rep.zero_locus += p.zero_locus;
    rep.unknown += p.unknown;
  }
  return rep;
}

struct Parametrization {
  Int t, u, v;
  auto operator<=>(const Parametrization& o) const {
    auto key = [](const Parametrization& p) { return std::tie(p.t, p.u, p.v); };
    if (key(*this) < key(o)) return std::strong_ordering::less;
    if (key(o) < key(*this)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const Parametrization&) const = default;
};

inline std::vector<Int> build_monomials(const Int& t, const Int& u, const Int& v, int half) {
  std::vector<Int> x;
  for (int k = 0; k <= half; ++k) x.push_back(t * pow_int(u, half - k) * pow_int(v, k));
  return x;
}

// All (t, u, v) with x_k = t u^(h-k) v^k, h = len(x) - 1.
inline std::vector<Parametrization> recover_parametrization(const std::vector<Int>& x) {
  if (x.size() < 2) throw DomainError("recover_parametrization: need at least two coordinates");
  const int half = static_cast<int>(x.size()) - 1;
  for (int k = 0; k + 2 <= half; ++k)
    if (x[k] * x[k + 2] != x[k + 1] * x[k + 1])
      throw DomainError("recover_parametrization: quadric chain violated at index " + std::to_string(k));
  Int t = 0;
  for (const auto& c : x) t = gcd(t, c);
  if (t == 0) throw DomainError("recover_parametrization: zero vector");
  Int u = 0, v = 0;
  for (int k = 0; k < half; ++k) u = gcd(u, Int(x[k] / t));
  for (int k = 1; k <= half; ++k) v = gcd(v, Int(x[k] / t));
  std::vector<Parametrization> out;
  for (int st : {1, -1})
    for (int su : {1, -1})
      for (int sv : {1, -1}) {
        Parametrization p{st * t, su * u, sv * v};
        if (build_monomials(p.t, p.u, p.v, half) == x) out.push_back(p);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw DomainError("recover_parametrization: vector is not of the form t u^(h-k) v^k");
  return out;
}

// S(X) = sum over x in [-X, X]^2 with F(x) > 0 of r_a(F(x)).
inline Int sum_r_a(const SurfaceSpec& spec, const Int& X, std::optional<Int> box = std::nullopt,
                   NormOrder order = NormOrder::Equation, bool use_divisor_formula = false) {
  if (spec.a > 0 && !box) throw DomainError("sum_r_a: a > 0 requires a (y, z) box");
  Int total = 0;
  for (Int u = -X; u <= X; ++u)
    for (Int v = -X; v <= X; ++v) {
      const Int f = spec.evaluate(u, v);
      if (f <= 0) continue;
      total += use_divisor_formula ? r_a_divisor_formula(f, spec.a) : r_a_count(f, spec.a, box, order);
    }
  return total;
}

struct DensityLevel {
  int level = 0;
  bool exact = true;
  Rat value;                 // exact mode
  Rat ambiguous;             // part of value from residues with F_i = 0 mod p^level
  double estimate = 0;       // sampling mode
  double standard_error = 0;
  std::uint64_t samples = 0;
};

struct DensityOptions {
  double work_budget = 5e8;    // exhaustive mode limit on residue operations per level
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
};

namespace detail {

inline unsigned truncated_valuation(std::uint64_t x, std::uint64_t p, unsigned level) {
  if (x == 0) return level;
  unsigned k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

inline std::uint64_t reduce(const Int& c, std::uint64_t q) {
  Int r = c % Int(static_cast<unsigned long>(q));
  if (r < 0) r += static_cast<unsigned long>(q);
  return r.get_ui();
}

inline std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t u, std::uint64_t v, std::uint64_t q) {
  std::uint64_t acc = 0, vp = 1;
  for (auto cj : c) {
    acc = (mulmod(acc, u, q) + mulmod(cj, vp, q)) % q;
    vp = mulmod(vp, v, q);
  }
  return acc;
}

} // namespace detail

// Truncated local densities at p for the torsor class `label`. The parity condition reads
// nu_p(F_i) through min(nu_p, level) and applies only when p is inert.
inline std::vector<DensityLevel> local_density(const SurfaceSpec& spec, const TorsorLabel& label, std::uint64_t p,
                                               int levels, const DensityOptions& opt = {}) {
  if (!is_prime(Int(static_cast<unsigned long>(p)))) throw DomainError("local_density: p must be prime");
  if (label.m.size() != spec.factors.size()) throw DomainError("local_density: label length mismatch");
  const bool inert = is_inert(spec.a, Int(static_cast<unsigned long>(p)));
  std::vector<unsigned> mu(spec.factors.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    mu[i] = mpz_divisible_ui_p(label.m[i].get_mpz_t(), p) ? valuation(label.m[i], Int(static_cast<unsigned long>(p))) : 0;

  std::vector<DensityLevel> out;
  std::mt19937_64 rng(opt.seed);
  for (int n = 1; n <= levels; ++n) {
    const double qd = std::pow(static_cast<double>(p), n);
    if (qd > 4e9) throw ResourceLimitError("local_density: modulus p^n too large");
    const std::uint64_t q = static_cast<std::uint64_t>(std::llround(qd));
    std::vector<std::vector<std::uint64_t>> fc;
    for (const auto& f : spec.factors) {
      std::vector<std::uint64_t> c;
      for (const auto& x : f.coeffs()) c.push_back(detail::reduce(x, q));
      fc.push_back(std::move(c));
    }
    const std::uint64_t am = detail::reduce(spec.a, q);
    auto parity_ok = [&](std::uint64_t u, std::uint64_t v, bool& ambiguous, std::uint64_t& fprod) {
      ambiguous = false;
      fprod = 1 % q;
      bool ok = true;
      for (std::size_t i = 0; i < fc.size(); ++i) {
        const std::uint64_t fi = detail::eval_mod(fc[i], u, v, q);
        fprod = detail::mulmod(fprod, fi, q);
        const unsigned nu = detail::truncated_valuation(fi, p, n);
        if (fi == 0) ambiguous = true;
        if (inert && (nu + mu[i]) % 2) ok = false;
      }
      return ok;
    };

    DensityLevel lev;
    lev.level = n;
    const double work = qd * qd * qd + qd * qd;
    if (work <= opt.work_budget) {
      // Counts of y^2 - a z^2 = c with (y, z) arbitrary / not both divisible by p.
      std::vector<std::uint64_t> all(q, 0), prim(q, 0);
      for (std::uint64_t y = 0; y < q; ++y)
        for (std::uint64_t z = 0; z < q; ++z) {
          const std::uint64_t c = (detail::mulmod(y, y, q) + q - detail::mulmod(am, detail::mulmod(z, z, q), q)) % q;
          ++all[c];
          if (y % p || z % p) ++prim[c];
        }
      Int good = 0, amb = 0;
      for (std::uint64_t u = 0; u < q; ++u)
        for (std::uint64_t v = 0; v < q; ++v) {
          if (u % p == 0 && v % p == 0) continue;
          bool ambiguous;
          std::uint64_t f;
          if (!parity_ok(u, v, ambiguous, f)) continue;
          std::uint64_t cnt = 0;
          for (std::uint64_t t = 0; t < q; ++t) {
            const std::uint64_t c = detail::mulmod(detail::mulmod(t, t, q), f, q);
            cnt += t % p ? all[c] : prim[c];
          }
          good += static_cast<unsigned long>(cnt);
          if (ambiguous) amb += static_cast<unsigned long>(cnt);
        }
      const Int q4 = pow_int(Int(static_cast<unsigned long>(q)), 4);
      lev.value = Rat(good, q4);
      lev.value.canonicalize();
      lev.ambiguous = Rat(amb, q4);
      lev.ambiguous.canonicalize();
      lev.estimate = lev.value.get_d();
    } else {
      lev.exact = false;
      std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
      std::uint64_t hits = 0;
      for (std::uint64_t s = 0; s < opt.samples; ++s) {
        const std::uint64_t u = dist(rng), v = dist(rng), y = dist(rng), z = dist(rng), t = dist(rng);
        if (u % p == 0 && v % p == 0) continue;
        if (y % p == 0 && z % p == 0 && t % p == 0) continue;
        bool ambiguous;
        std::uint64_t f;
        if (!parity_ok(u, v, ambiguous, f)) continue;
        const std::uint64_t lhs = detail::mulmod(detail::mulmod(t, t, q), f, q);
        const std::uint64_t rhs = (detail::mulmod(y, y, q) + q - detail::mulmod(am, detail::mulmod(z, z, q), q)) % q;
        if (lhs == rhs) ++hits;
      }
      // value = q * P(tuple counted), tuples drawn uniformly from (Z/q)^5.
      const double mean = static_cast<double>(hits) / static_cast<double>(opt.samples);
      lev.samples = opt.samples;
      lev.estimate = qd * mean;
      lev.standard_error = qd * std::sqrt(mean * (1 - mean) / static_cast<double>(opt.samples));
    }
    out.push_back(lev);
  }
  return out;
}

} // namespace chatelet
