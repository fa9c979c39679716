#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/forms.hpp"
#include "chatelet/points.hpp"
#include "chatelet/quadfield.hpp"

namespace chatelet {

struct TorsorLabel {
  std::vector<int> epsilon;
  std::vector<Int> m;

  auto operator<=>(const TorsorLabel& o) const {
    if (epsilon != o.epsilon) return epsilon < o.epsilon ? std::strong_ordering::less : std::strong_ordering::greater;
    if (m != o.m) return m < o.m ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const TorsorLabel&) const = default;

  std::string str() const {
    std::string s = "((";
    for (std::size_t i = 0; i < epsilon.size(); ++i) s += (i ? "," : "") + std::to_string(epsilon[i]);
    s += "),(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + m[i].get_str();
    return s + "))";
  }
};

namespace detail {

inline std::optional<std::size_t> first_odd_factor(const SurfaceSpec& spec) {
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    if (spec.factors[i].degree() % 2) return i;
  return std::nullopt;
}

// Real fields with a unit of norm -1: -1 is a norm, so the sign component carries no information.
inline bool signs_trivial(const Int& a) { return a > 0 && cached_field_info(a).unit_norm == -1; }

} // namespace detail

inline std::vector<std::vector<int>> sigma_set(const SurfaceSpec& spec) {
  const std::size_t r = spec.factors.size();
  if (detail::signs_trivial(spec.a)) return {std::vector<int>(r, 1)};
  const auto odd = detail::first_odd_factor(spec);
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    if (odd && (mask >> *odd & 1)) continue;
    std::vector<int> e(r);
    for (std::size_t i = 0; i < r; ++i) e[i] = (mask >> i & 1) ? -1 : 1;
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<std::vector<Int>> m_set(const SurfaceSpec& spec) {
  const std::size_t r = spec.factors.size();
  std::vector<std::vector<Int>> rminus(r, std::vector<Int>(r, 1));
  std::set<Int> primes;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      rminus[i][j] = rminus[j][i] = resultant_splitting(spec, i, j).r_minus;
      for (const auto& pp : factorize(rminus[i][j]).factors) primes.insert(pp.prime);
    }
  // For each inert prime p, the set of factors whose m_i it divides is an even clique of the
  // graph {i ~ j : p | r_ij^(-1)}; choices for distinct primes are independent.
  std::vector<std::vector<Int>> out{std::vector<Int>(r, 1)};
  for (const Int& p : primes) {
    std::vector<unsigned> cliques;
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
      if (__builtin_popcount(mask) % 2) continue;
      bool clique = true;
      for (std::size_t i = 0; i < r && clique; ++i)
        for (std::size_t j = i + 1; j < r && clique; ++j)
          if ((mask >> i & 1) && (mask >> j & 1) && rminus[i][j] % p != 0) clique = false;
      if (clique) cliques.push_back(mask);
    }
    std::vector<std::vector<Int>> next = out;
    for (const auto& base : out)
      for (unsigned mask : cliques) {
        auto m = base;
        for (std::size_t i = 0; i < r; ++i)
          if (mask >> i & 1) m[i] *= p;
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// All labels Sigma x M.
inline std::vector<TorsorLabel> label_set(const SurfaceSpec& spec) {
  std::vector<TorsorLabel> out;
  const auto ms = m_set(spec);
  for (const auto& e : sigma_set(spec))
    for (const auto& m : ms) out.push_back({e, m});
  return out;
}

// For specs of linear factors: m_j ranges over divisors of the inert part of prod_{k != j} r_jk.
inline std::vector<std::vector<Int>> split_case_m_set(const SurfaceSpec& spec) {
  const std::size_t r = spec.factors.size();
  for (const auto& f : spec.factors)
    if (f.degree() != 1) throw DomainError("split_case_m_set: every factor must be linear");
  std::vector<std::vector<Int>> choices(r);
  for (std::size_t j = 0; j < r; ++j) {
    Int s = 1;
    for (std::size_t k = 0; k < r; ++k)
      if (k != j) s = lcm(s, resultant_splitting(spec, j, k).r_minus);
    std::vector<Int> divs{1};
    for (const auto& pp : factorize(s).factors) {
      std::size_t cur = divs.size();
      for (std::size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pp.prime);
    }
    std::sort(divs.begin(), divs.end());
    choices[j] = std::move(divs);
  }
  std::vector<std::vector<Int>> out{{}};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::vector<Int>> next;
    for (const auto& base : out)
      for (const auto& d : choices[j]) {
        auto m = base;
        m.push_back(d);
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class LabelKind { Labeled, ZeroLocus, Unknown };

struct LabelResult {
  LabelKind kind = LabelKind::Unknown;
  TorsorLabel label;
  bool flipped = false;  // label read on the branch (-u, -v)
  std::string reason;
};

namespace detail {

// Product of inert primes dividing f to an odd power.
inline Int odd_inert_part(const Int& f, const Int& a) {
  Int m = 1;
  for (const auto& pp : factorize(f).factors)
    if (pp.exponent % 2 && is_inert(a, pp.prime)) m *= pp.prime;
  return m;
}

inline LabelResult label_on_branch(const SurfaceSpec& spec, const Int& u, const Int& v) {
  const std::size_t r = spec.factors.size();
  LabelResult res;
  res.label.epsilon.assign(r, 1);
  res.label.m.assign(r, 1);
  const bool trivial_signs = signs_trivial(spec.a);
  for (std::size_t i = 0; i < r; ++i) {
    const Int f = spec.factors[i](u, v);
    const Int m = odd_inert_part(f, spec.a);
    res.label.m[i] = m;
    if (spec.a < 0) {
      res.label.epsilon[i] = sgn(f);
    } else if (!trivial_signs) {
      const Int q = f / m;
      const NormResult plus = is_norm(q, spec.a), minus = is_norm(Int(-q), spec.a);
      if (plus.status == NormStatus::Unknown || minus.status == NormStatus::Unknown) {
        res.kind = LabelKind::Unknown;
        res.reason = "norm oracle undecided for F" + std::to_string(i + 1);
        return res;
      }
      if (plus.representable() == minus.representable()) {
        res.kind = LabelKind::Unknown;
        res.reason = std::string(plus.representable() ? "both signs" : "neither sign") + " representable for F" +
                     std::to_string(i + 1) + " = " + f.get_str();
        return res;
      }
      res.label.epsilon[i] = plus.representable() ? 1 : -1;
    }
  }
  res.kind = LabelKind::Labeled;
  return res;
}

} // namespace detail

// Label (eps, m) of the torsor class containing the point. Points on F = 0 get the squarefree
// completion and kind ZeroLocus.
inline LabelResult assign_label(const SurfaceSpec& spec, const PointRecord& pt) {
  const std::size_t r = spec.factors.size();
  std::optional<std::size_t> zero;
  for (std::size_t i = 0; i < r; ++i)
    if (spec.factors[i](pt.u, pt.v) == 0) zero = i;

  if (zero) {
    LabelResult res;
    res.kind = LabelKind::ZeroLocus;
    res.label.epsilon.assign(r, 1);
    res.label.m.assign(r, 1);
    Int prod = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == *zero) continue;
      const Int f = spec.factors[i](pt.u, pt.v);
      const Int m = detail::odd_inert_part(f, spec.a);
      res.label.m[i] = m;
      res.label.epsilon[i] = spec.a < 0 ? sgn(f) : 1;
      prod *= res.label.epsilon[i] * m;
    }
    const Int completion = squarefree_part(prod);
    res.label.epsilon[*zero] = sgn(completion);
    res.label.m[*zero] = abs_int(completion);
    res.reason = "F" + std::to_string(*zero + 1) + " vanishes";
    return res;
  }

  LabelResult res = detail::label_on_branch(spec, pt.u, pt.v);
  if (res.kind != LabelKind::Labeled) return res;
  if (const auto odd = detail::first_odd_factor(spec); odd && res.label.epsilon[*odd] != 1) {
    res = detail::label_on_branch(spec, Int(-pt.u), Int(-pt.v));
    res.flipped = true;
  }
  return res;
}

// Does the point lie on the torsor class `label`? std::nullopt when the norm oracle is undecided.
inline std::optional<bool> membership_test(const SurfaceSpec& spec, const TorsorLabel& label, const PointRecord& pt) {
  std::vector<std::pair<Int, Int>> branches{{pt.u, pt.v}};
  if (detail::first_odd_factor(spec)) branches.emplace_back(-pt.u, -pt.v);
  bool undecided = false;
  for (const auto& [u, v] : branches) {
    bool ok = true;
    for (std::size_t i = 0; i < spec.factors.size() && ok; ++i) {
      const Int f = spec.factors[i](u, v);
      const Int& m = label.m[i];
      if (f == 0) {
        ok = false;
        break;
      }
      if (spec.a < 0 && label.epsilon[i] * f <= 0) {
        ok = false;
        break;
      }
      for (const auto& pp : factorize(f * m).factors) {
        if (!is_inert(spec.a, pp.prime)) continue;
        unsigned vf = valuation(f, pp.prime), vm = valuation(m, pp.prime);
        if ((vf + vm) % 2) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      const Int n = label.epsilon[i] * m;
      if (f % n != 0) {
        ok = false;
        break;
      }
      const NormResult nr = is_norm(f / n, spec.a);
      if (nr.status == NormStatus::Unknown) {
        undecided = true;
        ok = false;
      } else if (!nr.representable()) {
        ok = false;
      }
    }
    if (ok) return true;
  }
  if (undecided) return std::nullopt;
  return false;
}

struct TorsorWitness {
  bool found = false;
  bool flipped = false;            // witnesses refer to the branch (-u, -v)
  std::vector<Int> n, s, t;        // F_i(u,v) = n_i (s_i^2 - a t_i^2)
  Int product;                     // prod n_i
  Int product_x, product_y;        // product = x^2 - a y^2
  std::string reason;
};

inline TorsorWitness lambda_torsor_witness(const SurfaceSpec& spec, const PointRecord& pt, const TorsorLabel& label) {
  std::vector<std::pair<Int, Int>> branches{{pt.u, pt.v}};
  if (detail::first_odd_factor(spec)) branches.emplace_back(-pt.u, -pt.v);
  TorsorWitness w;
  w.reason = "no branch admits witnesses";
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& [u, v] = branches[b];
    TorsorWitness cand;
    cand.flipped = b == 1;
    cand.product = 1;
    bool ok = true;
    for (std::size_t i = 0; i < spec.factors.size() && ok; ++i) {
      const Int f = spec.factors[i](u, v);
      const Int n = label.epsilon[i] * label.m[i];
      if (f == 0 || f % n != 0) {
        ok = false;
        break;
      }
      const NormResult nr = is_norm(f / n, spec.a);
      if (!nr.representable()) {
        ok = false;
        break;
      }
      cand.n.push_back(n);
      cand.s.push_back(nr.x);
      cand.t.push_back(nr.y);
      cand.product *= n;
    }
    if (!ok) continue;
    const NormResult pn = is_norm(cand.product, spec.a);
    if (!pn.representable()) {
      w.reason = "product of n_i is not a norm";
      continue;
    }
    cand.product_x = pn.x;
    cand.product_y = pn.y;
    cand.found = true;
    return cand;
  }
  return w;
}

struct PartitionReport {
  Int bound;
  std::size_t points = 0;
  std::size_t labeled = 0;
  std::size_t labels_total = 0;  // |Sigma x M|
  std::map<TorsorLabel, std::size_t> per_label;
  std::vector<std::pair<PointRecord, TorsorLabel>> zero_locus;
  std::vector<std::pair<PointRecord, std::string>> unknown;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline std::string point_str(const PointRecord& p) {
  return "(y,z,t,u,v)=(" + p.y.get_str() + "," + p.z.get_str() + "," + p.t.get_str() + "," + p.u.get_str() + "," +
         p.v.get_str() + ")";
}

// Label every point of height <= bound and verify that exactly its label accepts it.
inline PartitionReport partition_check(const SurfaceSpec& spec, const Int& bound, unsigned jobs = 1) {
  if (cached_field_info(spec.a).h != 1) throw DomainError("partition_check: Q(sqrt a) must have class number 1");
  PartitionReport rep;
  rep.bound = bound;
  const auto labels = label_set(spec);
  rep.labels_total = labels.size();
  const std::set<TorsorLabel> label_index(labels.begin(), labels.end());
  const auto points = enumerate_points(spec, bound, jobs);
  rep.points = points.size();

  std::vector<PartitionReport> parts(std::max(1u, jobs));
  detail::parallel_chunks(points.size(), jobs, [&](unsigned w, std::size_t lo, std::size_t hi) {
    PartitionReport& part = parts[w];
    for (std::size_t k = lo; k < hi; ++k) {
      const PointRecord& pt = points[k];
      const LabelResult lr = assign_label(spec, pt);
      if (lr.kind == LabelKind::ZeroLocus) {
        part.zero_locus.emplace_back(pt, lr.label);
        continue;
      }
      if (lr.kind == LabelKind::Unknown) {
        part.unknown.emplace_back(pt, lr.reason);
        continue;
      }
      // Parity conservation at inert primes.
      std::map<Int, unsigned> inert_total;
      for (const auto& f : spec.factors) {
        const Int val = f(pt.u, pt.v);
        for (const auto& pp : factorize(val).factors)
          if (is_inert(spec.a, pp.prime)) inert_total[pp.prime] += pp.exponent;
      }
      for (const auto& [p, e] : inert_total)
        if (e % 2) part.violations.push_back("odd total valuation at inert prime " + p.get_str() + " for " + point_str(pt));

      Int mprod = 1;
      for (const auto& m : lr.label.m) mprod *= m;
      if (!is_square(mprod)) part.violations.push_back("m-product not a square for " + point_str(pt));
      if (!label_index.count(lr.label)) {
        part.violations.push_back("label " + lr.label.str() + " outside Sigma x M for " + point_str(pt));
        continue;
      }
      std::vector<TorsorLabel> accepting;
      bool undecided = false;
      for (const auto& lab : labels) {
        auto mt = membership_test(spec, lab, pt);
        if (!mt) undecided = true;
        else if (*mt) accepting.push_back(lab);
      }
      if (undecided) {
        part.unknown.emplace_back(pt, "membership undecided");
        continue;
      }
      if (accepting.size() != 1 || accepting.front() != lr.label) {
        std::string acc;
        for (const auto& l : accepting) acc += " " + l.str();
        part.violations.push_back(point_str(pt) + " assigned " + lr.label.str() + " but accepted by {" + acc + " }");
        continue;
      }
      ++part.labeled;
      ++part.per_label[lr.label];
    }
  });
  for (auto& part : parts) {
    rep.labeled += part.labeled;
    for (const auto& [l, c] : part.per_label) rep.per_label[l] += c;
    rep.zero_locus.insert(rep.zero_locus.end(), part.zero_locus.begin(), part.zero_locus.end());
    rep.unknown.insert(rep.unknown.end(), part.unknown.begin(), part.unknown.end());
    rep.violations.insert(rep.violations.end(), part.violations.begin(), part.violations.end());
  }
  return rep;
}

} // namespace chatelet
