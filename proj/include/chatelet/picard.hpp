#pragma once

#include <string>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/detail/zmatrix.hpp"
#include "chatelet/forms.hpp"

namespace chatelet {

// Geometric Picard lattice of the conic bundle. Basis order:
// index 0 = [E+], 1..n = [D_1+]..[D_n+], n+1 = [D_1-].
struct PicLattice {
  int n = 0;
  std::vector<int> degrees;     // root blocks: factor i owns a consecutive run of d_i roots
  ZMatrix sigma;                // conjugation of Q(sqrt a), acting on columns
  std::vector<ZMatrix> perms;   // one full cycle per factor
  std::vector<Int> anticanonical;

  std::size_t rank() const { return static_cast<std::size_t>(n) + 2; }
  std::vector<std::string> basis_labels() const {
    std::vector<std::string> l{"E+"};
    for (int k = 1; k <= n; ++k) l.push_back("D" + std::to_string(k) + "+");
    l.push_back("D1-");
    return l;
  }

  std::vector<Int> e(std::size_t i) const {
    std::vector<Int> v(rank(), 0);
    v[i] = 1;
    return v;
  }
  // Fibre class [D_k+] + [D_k-], the same for every k.
  std::vector<Int> fibre() const {
    auto v = e(1);
    v[n + 1] = 1;
    return v;
  }
  std::vector<Int> d_plus(int k) const { return e(k); }
  std::vector<Int> d_minus(int k) const {
    auto v = fibre();
    v[k] -= 1;
    return v;
  }
  std::vector<Int> e_plus() const { return e(0); }
  // [E-] = [E+] + sum_k [D_k+] - (n/2) fibre, from the relation with the first half of the roots.
  std::vector<Int> e_minus() const {
    auto v = e(0);
    auto f = fibre();
    for (int k = 1; k <= n; ++k) v[k] += 1;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= Int(n / 2) * f[i];
    return v;
  }
};

namespace detail {

inline std::vector<Int> add(std::vector<Int> a, const std::vector<Int>& b, long scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

} // namespace detail

inline PicLattice build_lattice(const std::vector<int>& degrees) {
  PicLattice lat;
  lat.degrees = degrees;
  for (int d : degrees) {
    if (d < 1) throw DomainError("build_lattice: factor degrees must be positive");
    lat.n += d;
  }
  if (lat.n < 2 || lat.n % 2) throw DomainError("build_lattice: total degree must be even and positive");
  const int n = lat.n;
  const std::size_t N = lat.rank();

  std::vector<std::vector<Int>> cols(N);
  cols[0] = lat.e_minus();
  for (int k = 1; k <= n; ++k) cols[k] = lat.d_minus(k);
  cols[n + 1] = lat.d_plus(1);
  lat.sigma = ZMatrix::from_columns(cols, N);

  int start = 1;
  for (int d : degrees) {
    auto next = [&](int k) { return k + 1 < start + d ? k + 1 : start; };
    std::vector<std::vector<Int>> pc(N);
    pc[0] = lat.e_plus();
    for (int k = 1; k <= n; ++k) pc[k] = (k >= start && k < start + d) ? lat.d_plus(next(k)) : lat.d_plus(k);
    pc[n + 1] = lat.d_minus(1 >= start && 1 < start + d ? next(1) : 1);
    lat.perms.push_back(ZMatrix::from_columns(pc, N));
    start += d;
  }

  lat.anticanonical = detail::add(lat.e(0), lat.e(0));
  for (int k = 1; k <= n; ++k) lat.anticanonical[k] += 1;
  return lat;
}

inline PicLattice build_lattice(const SurfaceSpec& spec) {
  if (spec.factors.empty()) throw DomainError("build_lattice: spec has no factors");
  return build_lattice(spec.degrees());
}

struct GeneratorSelection {
  bool sigma = false;
  std::vector<std::size_t> perms;

  static GeneratorSelection none() { return {}; }
  static GeneratorSelection perms_only(const PicLattice& lat) {
    GeneratorSelection g;
    for (std::size_t i = 0; i < lat.perms.size(); ++i) g.perms.push_back(i);
    return g;
  }
  static GeneratorSelection all(const PicLattice& lat) {
    auto g = perms_only(lat);
    g.sigma = true;
    return g;
  }
};

// Basis (columns) of the sublattice fixed by every selected generator.
inline ZMatrix fixed_sublattice(const PicLattice& lat, const GeneratorSelection& sel) {
  const std::size_t N = lat.rank();
  std::vector<ZMatrix> blocks;
  const ZMatrix id = ZMatrix::identity(N);
  if (sel.sigma) blocks.push_back(lat.sigma - id);
  for (std::size_t i : sel.perms) blocks.push_back(lat.perms.at(i) - id);
  if (blocks.empty()) return id;
  return integer_kernel(ZMatrix::vstack(blocks, N));
}

struct FiniteAbelianGroup {
  std::vector<Int> divisors;  // elementary divisors >= 2, each dividing the next

  Int order() const {
    Int o = 1;
    for (const auto& d : divisors) o *= d;
    return o;
  }
  bool operator==(const FiniteAbelianGroup&) const = default;
};

// Ker(sigma + 1) / Im(1 - sigma) for sigma restricted to the permutation-fixed sublattice.
inline FiniteAbelianGroup tate_h1(const PicLattice& lat) {
  const ZMatrix b = fixed_sublattice(lat, GeneratorSelection::perms_only(lat));
  const std::size_t k = b.cols();
  auto s = solve_integer(b, lat.sigma * b);
  if (!s) throw InvariantViolation("tate_h1: sigma does not preserve the permutation-fixed sublattice");
  const ZMatrix id = ZMatrix::identity(k);
  const ZMatrix ker = integer_kernel(*s + id);
  const ZMatrix img = id - *s;
  auto coords = solve_integer(ker, img);
  if (!coords) throw InvariantViolation("tate_h1: Im(1 - sigma) is not inside Ker(1 + sigma)");
  SmithForm snf = smith_normal_form(*coords);
  FiniteAbelianGroup g;
  std::size_t nonzero = 0;
  for (const auto& d : snf.diagonal) {
    if (d != 0) ++nonzero;
    if (d > 1) g.divisors.push_back(d);
  }
  if (nonzero != ker.cols()) throw InvariantViolation("tate_h1: quotient has a free part");
  return g;
}

struct PicardRanks {
  std::size_t geometric, over_quadratic, over_q;
};

inline PicardRanks picard_ranks(const PicLattice& lat) {
  return {fixed_sublattice(lat, GeneratorSelection::none()).cols(),
          fixed_sublattice(lat, GeneratorSelection::perms_only(lat)).cols(),
          fixed_sublattice(lat, GeneratorSelection::all(lat)).cols()};
}

struct BetaReport {
  Int closed_form;
  Int mod2;
  Int tate;
  bool agree() const { return closed_form == mod2 && mod2 == tate; }
  Int value() const {
    if (!agree()) throw InvariantViolation("beta: the three computations disagree");
    return closed_form;
  }
};

// dim_F2 of (parity vector)^perp / (its intersection with the all-ones line).
inline unsigned mod2_orthogonal_quotient_dim(const std::vector<int>& degrees) {
  const std::size_t r = degrees.size();
  std::vector<unsigned> parity(r);
  for (std::size_t i = 0; i < r; ++i) parity[i] = degrees[i] & 1;
  // The orthogonal complement of a single vector: kernel of a 1 x r matrix.
  bool nonzero = false;
  for (unsigned p : parity) nonzero = nonzero || p;
  unsigned dim_perp = static_cast<unsigned>(r) - (nonzero ? 1 : 0);
  unsigned dot = 0;
  for (unsigned p : parity) dot ^= p;
  bool ones_in_perp = dot == 0;
  return dim_perp - (ones_in_perp && r > 0 ? 1 : 0);
}

inline BetaReport beta(const SurfaceSpec& spec) {
  const auto degrees = spec.degrees();
  const long r = static_cast<long>(degrees.size());
  bool all_even = true;
  for (int d : degrees) all_even = all_even && d % 2 == 0;
  BetaReport rep;
  rep.closed_form = pow_int(2, static_cast<unsigned long>(all_even ? r - 1 : r - 2));
  rep.mod2 = pow_int(2, mod2_orthogonal_quotient_dim(degrees));
  rep.tate = tate_h1(build_lattice(spec)).order();
  return rep;
}

struct ConeData {
  // Coordinates in the basis (anticanonical, fibre) of Pic(S).
  std::vector<std::pair<Rat, Rat>> effective_generators;
  Rat slice_lower, slice_upper;
  Rat alpha() const { return slice_upper - slice_lower; }
};

// Effective cone generated by [E+]+[E-] and the fibre; alpha is the length of the dual-cone
// slice at height 1 against the anticanonical class.
inline ConeData effective_cone(const SurfaceSpec& spec) {
  const PicLattice lat = build_lattice(spec);
  const std::size_t N = lat.rank();
  const ZMatrix pic = fixed_sublattice(lat, GeneratorSelection::all(lat));
  const ZMatrix basis = ZMatrix::from_columns({lat.anticanonical, lat.fibre()}, N);

  auto change = solve_integer(pic, basis);
  if (!change || pic.cols() != 2 || abs_int(bareiss_determinant(*change)) != 1)
    throw InvariantViolation("effective_cone: anticanonical and fibre classes do not form a basis of Pic(S)");

  const auto g1 = detail::add(lat.e_plus(), lat.e_minus());
  const ZMatrix gens = ZMatrix::from_columns({g1, lat.fibre()}, N);
  auto coords = solve_integer(basis, gens);
  if (!coords) throw InvariantViolation("effective_cone: generators not in Pic(S)");

  ConeData cone;
  bool has_lower = false, has_upper = false;
  for (std::size_t j = 0; j < 2; ++j) {
    Rat p((*coords)(0, j)), q((*coords)(1, j));
    cone.effective_generators.emplace_back(p, q);
    // <(p, q), (1, y)> = p + q y >= 0
    if (q == 0) {
      if (p < 0) throw InvariantViolation("effective_cone: empty dual slice");
      continue;
    }
    Rat bound = -p / q;
    if (q > 0) {
      if (!has_lower || bound > cone.slice_lower) cone.slice_lower = bound;
      has_lower = true;
    } else {
      if (!has_upper || bound < cone.slice_upper) cone.slice_upper = bound;
      has_upper = true;
    }
  }
  if (!has_lower || !has_upper || cone.slice_upper < cone.slice_lower)
    throw InvariantViolation("effective_cone: dual slice is unbounded or empty");
  return cone;
}

inline Rat alpha(const SurfaceSpec& spec) { return effective_cone(spec).alpha(); }

} // namespace chatelet
