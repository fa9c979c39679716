#pragma once

#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/detail/polymod.hpp"
#include "chatelet/detail/zmatrix.hpp"

namespace chatelet {

// F(u,v) = sum_j c_j u^(d-j) v^j.
class BinaryForm {
 public:
  BinaryForm() : c_{1} {}
  explicit BinaryForm(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("binary form needs at least one coefficient");
    bool nonzero = false;
    for (const auto& x : c_) nonzero = nonzero || x != 0;
    if (!nonzero) throw DomainError("binary form must not be identically zero");
  }
  BinaryForm(std::initializer_list<long> coeffs) : BinaryForm(std::vector<Int>(coeffs.begin(), coeffs.end())) {}

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](std::size_t j) const { return c_[j]; }

  Int operator()(const Int& u, const Int& v) const {
    // Homogeneous Horner: ((c0 u + c1 v) u + c2 v^2) ...
    Int acc = 0, vpow = 1;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      acc = acc * u + c_[j] * vpow;
      vpow *= v;
    }
    return acc;
  }

  friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    std::vector<Int> c(f.c_.size() + g.c_.size() - 1, 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i)
      for (std::size_t j = 0; j < g.c_.size(); ++j) c[i + j] += f.c_[i] * g.c_[j];
    return BinaryForm(std::move(c));
  }

  bool operator==(const BinaryForm&) const = default;

  std::string str() const {
    std::string s;
    const int d = degree();
    for (int j = 0; j <= d; ++j) {
      if (c_[j] == 0) continue;
      Int c = c_[j];
      s += (c < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + "));
      c = abs_int(c);
      std::string mono;
      auto var = [&](const char* name, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += "*";
        mono += name;
        if (e > 1) mono += "^" + std::to_string(e);
      };
      var("u", d - j);
      var("v", j);
      if (mono.empty() || c != 1) s += c.get_str() + (mono.empty() ? "" : "*");
      s += mono;
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::vector<Int> c_;
};

inline Int evaluate(const BinaryForm& f, const Int& u, const Int& v) { return f(u, v); }

// Determinant of the Sylvester matrix of F(x,1), G(x,1) with their declared degrees.
inline Int resultant(const BinaryForm& f, const BinaryForm& g) {
  const std::size_t d = f.degree(), e = g.degree();
  const std::size_t n = d + e;
  if (n == 0) return 1;
  ZMatrix s(n, n);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j <= d; ++j) s(i, i + j) = f[j];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= e; ++j) s(e + i, i + j) = g[j];
  return bareiss_determinant(std::move(s));
}

// Discriminant of F(x,1); requires c0 != 0.
inline Int discriminant(const BinaryForm& f) {
  const int d = f.degree();
  if (f[0] == 0) throw DomainError("discriminant needs a nonzero leading coefficient");
  if (d == 1) return 1;
  std::vector<Int> dc(d);
  for (int j = 0; j < d; ++j) dc[j] = f[j] * (d - j);
  Int r = resultant(f, BinaryForm(std::move(dc)));
  Int out = r / f[0];
  return (d * (d - 1) / 2) % 2 ? Int(-out) : out;
}

struct SurfaceSpec {
  Int a;
  std::vector<BinaryForm> factors;

  int n() const {
    int s = 0;
    for (const auto& f : factors) s += f.degree();
    return s;
  }
  int r() const { return static_cast<int>(factors.size()); }
  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& f : factors) d.push_back(f.degree());
    return d;
  }
  BinaryForm product() const {
    BinaryForm p{1};
    for (const auto& f : factors) p = p * f;
    return p;
  }
  Int evaluate(const Int& u, const Int& v) const {
    Int p = 1;
    for (const auto& f : factors) p *= f(u, v);
    return p;
  }
};

struct ResultantSplitting {
  Int r;        // Res(F_i(X,1), F_j(X,1))
  Int r_plus;   // primes p | r not inert in Q(sqrt a)
  Int r_minus;  // inert primes p | r
};

inline ResultantSplitting resultant_splitting(const SurfaceSpec& spec, std::size_t i, std::size_t j) {
  if (i == j || i >= spec.factors.size() || j >= spec.factors.size())
    throw DomainError("resultant_splitting: need two distinct factor indices");
  ResultantSplitting out{resultant(spec.factors[i], spec.factors[j]), 1, 1};
  if (out.r == 0) throw DomainError("resultant_splitting: factors share a root");
  for (const auto& pp : factorize(out.r).factors) (is_inert(spec.a, pp.prime) ? out.r_minus : out.r_plus) *= pp.prime;
  return out;
}

enum class Irreducibility { Irreducible, Reducible, Unknown };

inline const char* to_string(Irreducibility x) {
  switch (x) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    default: return "unknown";
  }
}

namespace detail {

inline PolyP reduce_monic(const BinaryForm& f, std::uint64_t p) {
  // F(x,1) = sum_j c_j x^(d-j), stored low degree first.
  const int d = f.degree();
  PolyP g(d + 1);
  for (int j = 0; j <= d; ++j) {
    Int c = f[j] % Int(static_cast<unsigned long>(p));
    if (c < 0) c += static_cast<unsigned long>(p);
    g[d - j] = c.get_ui();
  }
  const std::uint64_t inv = invmod(g[d], p);
  for (auto& c : g) c = mulmod(c, inv, p);
  return g;
}

constexpr int kMaxCertDegree = 256;
using DegreeSet = std::bitset<kMaxCertDegree + 1>;

inline DegreeSet subset_sums(const std::vector<int>& degs) {
  DegreeSet s;
  s[0] = true;
  for (int k : degs) s |= s << k;
  return s;
}

inline bool has_rational_root(const BinaryForm& f) {
  // Projective roots at infinity or zero.
  const int d = f.degree();
  if (f[0] == 0 || f[d] == 0) return true;
  // x = r/s with r | c_d, s | c_0.
  auto divisors = [](const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& pp : factorize(n).factors) {
      std::size_t cur = ds.size();
      Int pk = 1;
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        pk *= pp.prime;
        for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
      }
    }
    return ds;
  };
  for (const Int& r : divisors(f[d]))
    for (const Int& s : divisors(f[0])) {
      if (gcd(r, s) != 1) continue;
      if (f(r, s) == 0 || f(Int(-r), s) == 0) return true;
    }
  return false;
}

} // namespace detail

// Irreducibility over Q, certified by the finite-field degree-pattern test.
inline Irreducibility irreducible_over_q(const BinaryForm& f, int prime_budget = 50) {
  const int d = f.degree();
  if (d <= 0) return Irreducibility::Reducible;
  if (d == 1) return Irreducibility::Irreducible;
  if (f[0] == 0 || f[d] == 0) return Irreducibility::Reducible;
  if (d == 2) return is_square(f[1] * f[1] - 4 * f[0] * f[2]) ? Irreducibility::Reducible : Irreducibility::Irreducible;
  if (detail::has_rational_root(f)) return Irreducibility::Reducible;
  if (d == 3) return Irreducibility::Irreducible;
  if (d > detail::kMaxCertDegree) return Irreducibility::Unknown;
  const Int disc = discriminant(f);
  if (disc == 0) return Irreducibility::Reducible;
  detail::DegreeSet allowed;
  for (int k = 1; k < d; ++k) allowed[k] = true;
  int used = 0;
  for (std::uint32_t p : detail::small_primes()) {
    if (used >= prime_budget) break;
    if (mpz_divisible_ui_p(f[0].get_mpz_t(), p) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    ++used;
    allowed &= detail::subset_sums(detail::factor_degrees(detail::reduce_monic(f, p), p));
    if (allowed.none()) return Irreducibility::Irreducible;
  }
  return Irreducibility::Unknown;
}

// For F irreducible over Q. Even degree >= 4 uses split primes of Q(sqrt a): a factor over
// Q(sqrt a) would have degree d/2 and reduce modulo every split prime.
inline Irreducibility irreducible_over_quadratic(const BinaryForm& f, const Int& a, int split_prime_budget = 50) {
  if (irreducible_over_q(f) == Irreducibility::Reducible)
    throw DomainError("irreducible_over_quadratic: form is reducible over Q");
  const int d = f.degree();
  if (d == 1) return Irreducibility::Irreducible;
  if (d % 2) return Irreducibility::Irreducible;  // conjugate factors have equal degree
  if (d == 2) {
    Rat q(f[1] * f[1] - 4 * f[0] * f[2], a);
    q.canonicalize();
    bool square = q > 0 && is_square(q.get_num()) && is_square(q.get_den());
    return square ? Irreducibility::Reducible : Irreducibility::Irreducible;
  }
  if (d > detail::kMaxCertDegree) return Irreducibility::Unknown;
  const Int bad = discriminant(f) * a * f[0];
  int used = 0;
  for (std::uint32_t p : detail::small_primes()) {
    if (used >= split_prime_budget) break;
    if (p == 2 || mpz_divisible_ui_p(bad.get_mpz_t(), p) || splitting_type(a, p) != 1) continue;
    ++used;
    if (!detail::subset_sums(detail::factor_degrees(detail::reduce_monic(f, p), p))[d / 2])
      return Irreducibility::Irreducible;
  }
  return Irreducibility::Unknown;
}

enum class CheckStatus { Pass, Fail, Unknown };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "unknown";
  }
}

struct ValidationCheck {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
  bool has_unknown() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Unknown) return true;
    return false;
  }
};

inline ValidationReport validate_surface(const SurfaceSpec& spec) {
  ValidationReport rep;
  auto add = [&](std::string name, CheckStatus s, std::string detail = {}) {
    rep.checks.push_back({std::move(name), s, std::move(detail)});
  };

  bool a_ok = spec.a != 0 && spec.a != 1 && is_squarefree(spec.a);
  add("a squarefree, not 0 or 1", a_ok ? CheckStatus::Pass : CheckStatus::Fail, "a = " + spec.a.get_str());

  if (spec.factors.empty()) {
    add("at least one factor", CheckStatus::Fail);
    return rep;
  }
  const int n = spec.n();
  add("total degree even", n % 2 == 0 && n > 0 ? CheckStatus::Pass : CheckStatus::Fail, "n = " + std::to_string(n));

  std::vector<bool> q_irreducible(spec.factors.size(), false);
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    std::string tag = "F" + std::to_string(i + 1) + " = " + f.str();
    Irreducibility q = f.degree() == 0 ? Irreducibility::Reducible : irreducible_over_q(f);
    q_irreducible[i] = q != Irreducibility::Reducible;
    add("F" + std::to_string(i + 1) + " irreducible over Q",
        q == Irreducibility::Irreducible ? CheckStatus::Pass
        : q == Irreducibility::Reducible ? CheckStatus::Fail
                                         : CheckStatus::Unknown,
        tag);
  }

  bool pairwise_ok = true;
  std::string bad_pairs;
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    for (std::size_t j = i + 1; j < spec.factors.size(); ++j)
      if (resultant(spec.factors[i], spec.factors[j]) == 0) {
        pairwise_ok = false;
        bad_pairs += " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
  add("pairwise resultants nonzero", pairwise_ok ? CheckStatus::Pass : CheckStatus::Fail,
      pairwise_ok ? "" : "vanishing for" + bad_pairs);

  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    std::string name = "F" + std::to_string(i + 1) + " irreducible over Q(sqrt a)";
    if (!a_ok || !q_irreducible[i]) {
      add(name, CheckStatus::Unknown, "skipped: prerequisites failed");
      continue;
    }
    Irreducibility k = irreducible_over_quadratic(spec.factors[i], spec.a);
    add(name,
        k == Irreducibility::Irreducible ? CheckStatus::Pass
        : k == Irreducibility::Reducible ? CheckStatus::Fail
                                         : CheckStatus::Unknown,
        k == Irreducibility::Unknown ? "no split-prime certificate found" : "");
  }
  return rep;
}

} // namespace chatelet
