#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatelet/arith.hpp"
#include "chatelet/forms.hpp"

namespace chatelet {

// Element of Q(sqrt d_1, ..., sqrt d_k): coordinate S (a bitmask) multiplies prod_{i in S} sqrt d_i.
class MQElement {
 public:
  MQElement() : coords_(1, 0) {}
  MQElement(const Rat& q) : coords_(1, q) {}  // NOLINT(implicit)
  MQElement(long q) : coords_(1, Rat(q)) {}    // NOLINT(implicit)
  MQElement(const Int& q) : coords_(1, Rat(q)) {}  // NOLINT(implicit)

  MQElement(std::vector<Int> radicands, std::vector<Rat> coords) : radicands_(std::move(radicands)), coords_(std::move(coords)) {
    if (coords_.size() != (std::size_t{1} << radicands_.size()))
      throw DomainError("MQElement: coordinate count must be 2^k");
    check_basis(radicands_);
  }

  // sqrt(d) for a nonzero integer d.
  static MQElement sqrt(const Int& d) {
    if (d == 0) return MQElement();
    const Int s = squarefree_part(d);
    const Int c = isqrt(d / s);
    if (s == 1) return MQElement(c);
    return MQElement({s}, {Rat(0), Rat(c)});
  }

  const std::vector<Int>& radicands() const { return radicands_; }
  const std::vector<Rat>& coords() const { return coords_; }
  std::size_t k() const { return radicands_.size(); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t s = 1; s < coords_.size(); ++s)
      if (coords_[s] != 0) return false;
    return true;
  }

  Rat rational_part() const { return coords_[0]; }

  // Flip the sign of sqrt d_i for every bit i of `flips`.
  MQElement conjugate(unsigned flips) const {
    MQElement r = *this;
    for (std::size_t s = 0; s < coords_.size(); ++s)
      if (__builtin_popcount(static_cast<unsigned>(s) & flips) % 2) r.coords_[s] = -r.coords_[s];
    return r;
  }

  // Product of all 2^k conjugates.
  Rat norm_to_q() const {
    MQElement p(Rat(1));
    p = p.rebased(radicands_);
    for (unsigned f = 0; f < coords_.size(); ++f) p = p * conjugate(f);
    if (!p.is_rational()) throw InvariantViolation("norm_to_q: product of conjugates is not rational");
    return p.rational_part();
  }

  friend MQElement operator+(const MQElement& x, const MQElement& y) {
    auto [a, b] = unify(x, y);
    for (std::size_t s = 0; s < a.coords_.size(); ++s) a.coords_[s] += b.coords_[s];
    return a;
  }
  friend MQElement operator-(const MQElement& x, const MQElement& y) {
    auto [a, b] = unify(x, y);
    for (std::size_t s = 0; s < a.coords_.size(); ++s) a.coords_[s] -= b.coords_[s];
    return a;
  }
  MQElement operator-() const {
    MQElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }
  friend MQElement operator*(const MQElement& x, const MQElement& y) {
    auto [a, b] = unify(x, y);
    return mul_same(a, b);
  }
  MQElement& operator+=(const MQElement& o) { return *this = *this + o; }
  MQElement& operator*=(const MQElement& o) { return *this = *this * o; }

  friend bool operator==(const MQElement& x, const MQElement& y) { return (x - y).is_zero(); }

  // Re-express over a basis containing (in the multiplicative-closure sense) this basis.
  MQElement rebased(const std::vector<Int>& target) const {
    std::vector<Int> merged = target;
    std::vector<MQElement> images;
    for (const auto& d : radicands_) images.push_back(embed_radicand(merged, d));
    if (merged.size() != target.size()) throw DomainError("rebased: target basis does not contain the source radicands");
    MQElement out(merged, std::vector<Rat>(std::size_t{1} << merged.size(), 0));
    for (std::size_t s = 0; s < coords_.size(); ++s) {
      if (coords_[s] == 0) continue;
      MQElement term(merged, std::vector<Rat>(std::size_t{1} << merged.size(), 0));
      term.coords_[0] = coords_[s];
      for (std::size_t i = 0; i < radicands_.size(); ++i)
        if (s >> i & 1) term = mul_same(term, images[i]);
      for (std::size_t u = 0; u < out.coords_.size(); ++u) out.coords_[u] += term.coords_[u];
    }
    return out;
  }

  std::string str() const {
    std::string out;
    for (std::size_t s = 0; s < coords_.size(); ++s) {
      if (coords_[s] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coords_[s].get_str() + ")";
      for (std::size_t i = 0; i < radicands_.size(); ++i)
        if (s >> i & 1) out += "*sqrt(" + radicands_[i].get_str() + ")";
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<Int> radicands_;
  std::vector<Rat> coords_;

  // Subset product of the basis that equals d times a positive rational square, if any.
  static std::optional<std::pair<unsigned, Int>> express(const std::vector<Int>& basis, const Int& d) {
    for (unsigned s = 0; s < (1u << basis.size()); ++s) {
      Int prod = 1;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (s >> i & 1) prod *= basis[i];
      // prod / d must be a positive perfect square (d squarefree divides prod then).
      if (prod % d != 0) continue;
      Int q = prod / d;
      if (q > 0 && is_square(q)) return std::make_pair(s, isqrt(q));
    }
    return std::nullopt;
  }

  static void check_basis(const std::vector<Int>& basis) {
    std::vector<Int> seen;
    for (const auto& d : basis) {
      if (d == 0 || d == 1 || !is_squarefree(d)) throw DomainError("MQ basis radicands must be squarefree and not 0 or 1");
      if (express(seen, d)) throw DomainError("MQ basis radicands must be multiplicatively independent");
      seen.push_back(d);
    }
  }

  // Image of sqrt(d) over `basis`; appends d to the basis when independent.
  static MQElement embed_radicand(std::vector<Int>& basis, const Int& d) {
    if (auto e = express(basis, d)) {
      // sqrt(d) := e_S / c where prod_S d_i = d c^2.
      MQElement r(basis, std::vector<Rat>(std::size_t{1} << basis.size(), 0));
      r.coords_[e->first] = Rat(1) / Rat(e->second);
      return r;
    }
    basis.push_back(d);
    MQElement r(basis, std::vector<Rat>(std::size_t{1} << basis.size(), 0));
    r.coords_[std::size_t{1} << (basis.size() - 1)] = 1;
    return r;
  }

  static MQElement mul_same(const MQElement& a, const MQElement& b) {
    MQElement r = a;
    for (auto& c : r.coords_) c = 0;
    for (std::size_t s = 0; s < a.coords_.size(); ++s) {
      if (a.coords_[s] == 0) continue;
      for (std::size_t t = 0; t < b.coords_.size(); ++t) {
        if (b.coords_[t] == 0) continue;
        Rat c = a.coords_[s] * b.coords_[t];
        for (std::size_t i = 0; i < a.radicands_.size(); ++i)
          if ((s & t) >> i & 1) c *= a.radicands_[i];
        r.coords_[s ^ t] += c;
      }
    }
    return r;
  }

  // Bring both operands onto one basis: x's basis extended by y's independent radicands.
  static std::pair<MQElement, MQElement> unify(const MQElement& x, const MQElement& y) {
    if (x.radicands_ == y.radicands_) return {x, y};
    std::vector<Int> merged = x.radicands_;
    for (const auto& d : y.radicands_) embed_radicand(merged, d);
    return {x.rebased(merged), y.rebased(merged)};
  }
};

// L(u,v) = alpha u - beta v.
struct MQLinearForm {
  MQElement alpha, beta;

  MQElement operator()(const Int& u, const Int& v) const { return alpha * MQElement(u) - beta * MQElement(v); }
};

// From coefficients of L = a u + b v.
inline MQLinearForm linear_form_from_ab(const MQElement& a, const MQElement& b) { return {a, -b}; }

// L1 L2 = a1 u^2 + b1 u v + c1 v^2 over Q(sqrt disc): L1 = a1 u - ((-b1 + sqrt disc)/2) v,
// L2 = u - ((-b1 - sqrt disc)/(2 a1)) v.
inline std::pair<MQLinearForm, MQLinearForm> split_quadratic(const BinaryForm& f) {
  if (f.degree() != 2) throw DomainError("split_quadratic: form must have degree 2");
  const Int &a1 = f[0], &b1 = f[1], &c1 = f[2];
  if (a1 == 0) throw DomainError("split_quadratic: leading coefficient is zero");
  const Int disc = b1 * b1 - 4 * a1 * c1;
  if (is_square(disc)) throw DomainError("split_quadratic: discriminant is a perfect square");
  const MQElement root = MQElement::sqrt(disc);
  const MQElement half(Rat(1, 2));
  MQLinearForm l1{MQElement(a1), (MQElement(Int(-b1)) + root) * half};
  MQLinearForm l2{MQElement(1), (MQElement(Int(-b1)) - root) * MQElement(make_rat(1, 2 * a1))};
  return {l1, l2};
}

// Res(L_i(X,1), L_j(X,1)) = alpha_j beta_i - alpha_i beta_j for L = alpha u - beta v.
inline MQElement delta(const MQLinearForm& li, const MQLinearForm& lj) {
  return lj.alpha * li.beta - li.alpha * lj.beta;
}

inline MQElement pluecker_residue(const MQLinearForm& lj, const MQLinearForm& lk, const MQLinearForm& ll, const Int& u,
                                  const Int& v) {
  return delta(lj, lk) * ll(u, v) + delta(lk, ll) * lj(u, v) + delta(ll, lj) * lk(u, v);
}

// Coefficients (of u^2, uv, v^2) of the product of two linear forms.
inline std::vector<MQElement> expand_product(const MQLinearForm& l1, const MQLinearForm& l2) {
  return {l1.alpha * l2.alpha, -(l1.alpha * l2.beta + l1.beta * l2.alpha), l1.beta * l2.beta};
}

} // namespace chatelet
