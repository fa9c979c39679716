#include <gtest/gtest.h>

#include "chatelet/picard.hpp"

using namespace chatelet;

namespace {

ZMatrix column(const std::vector<Int>& v) { return ZMatrix::from_columns({v}, v.size()); }

ZMatrix power(const ZMatrix& m, int k) {
  ZMatrix r = ZMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

const std::vector<std::vector<int>> kPatterns{{2, 2},    {1, 1, 2}, {1, 3}, {4},       {2, 2, 2},    {1, 1, 1, 1}, {2},
                                              {6},       {2, 4},    {1, 5}, {3, 3},    {1, 1, 2, 2}, {2, 2, 2, 2}, {1, 1, 1, 1, 2},
                                              {1, 2, 3}, {8},       {4, 4}, {1, 1, 1, 1, 1, 1}};

} // namespace

TEST(Lattice, Shape) {
  auto lat = build_lattice(std::vector<int>{2, 2});
  EXPECT_EQ(lat.rank(), 6u);
  EXPECT_EQ(lat.sigma * lat.sigma, ZMatrix::identity(6));
  EXPECT_THROW(build_lattice(std::vector<int>{1, 2}), DomainError);
}

TEST(Lattice, GroupRelations) {
  for (const auto& deg : kPatterns) {
    auto lat = build_lattice(deg);
    const std::size_t N = lat.rank();
    const ZMatrix id = ZMatrix::identity(N);
    EXPECT_EQ(lat.sigma * lat.sigma, id);
    for (std::size_t i = 0; i < deg.size(); ++i) {
      EXPECT_EQ(power(lat.perms[i], deg[i]), id);
      EXPECT_EQ(lat.perms[i] * lat.sigma, lat.sigma * lat.perms[i]);
      for (std::size_t j = 0; j < deg.size(); ++j) EXPECT_EQ(lat.perms[i] * lat.perms[j], lat.perms[j] * lat.perms[i]);
    }
    const ZMatrix k = column(lat.anticanonical);
    EXPECT_EQ(lat.sigma * k, k);
    for (const auto& p : lat.perms) EXPECT_EQ(p * k, k);
    EXPECT_EQ(lat.sigma * column(lat.fibre()), column(lat.fibre()));
    EXPECT_EQ(abs_int(bareiss_determinant(lat.sigma)), 1);
  }
}

TEST(Lattice, AnticanonicalBothExpressions) {
  for (const auto& deg : kPatterns) {
    auto lat = build_lattice(deg);
    std::vector<Int> minus = lat.e_minus();
    for (auto& x : minus) x *= 2;
    for (int k = 1; k <= lat.n; ++k) minus = detail::add(minus, lat.d_minus(k));
    EXPECT_EQ(minus, lat.anticanonical);
  }
}

TEST(Lattice, FixedRanks) {
  for (const auto& deg : kPatterns) {
    auto lat = build_lattice(deg);
    auto r = picard_ranks(lat);
    const int n = lat.n;
    EXPECT_EQ(r.geometric, static_cast<std::size_t>(n + 2));
    EXPECT_EQ(r.over_quadratic, deg.size() + 2);
    EXPECT_EQ(r.over_q, 2u);
  }
}

TEST(TateH1, Examples) {
  EXPECT_EQ(tate_h1(build_lattice(std::vector<int>{2, 2})).divisors, std::vector<Int>{2});
  EXPECT_TRUE(tate_h1(build_lattice(std::vector<int>{1, 3})).divisors.empty());
  EXPECT_TRUE(tate_h1(build_lattice(std::vector<int>{4})).divisors.empty());
  EXPECT_EQ(tate_h1(build_lattice(std::vector<int>{2, 2, 2})).divisors, (std::vector<Int>{2, 2}));
}

TEST(Beta, ThreeWaysAgree) {
  for (const auto& deg : kPatterns) {
    SurfaceSpec s{-1, {}};
    for (int d : deg) {
      std::vector<Int> c(d + 1, 0);
      c[0] = 1;
      s.factors.emplace_back(c);
    }
    auto b = beta(s);
    EXPECT_TRUE(b.agree()) << b.closed_form << " " << b.mod2 << " " << b.tate;
    // Exponent r-1 when every degree is even, r-2 otherwise.
    bool all_even = true;
    for (int d : deg) all_even = all_even && d % 2 == 0;
    EXPECT_EQ(b.value(), pow_int(2, deg.size() - (all_even ? 1 : 2)));
  }
}

TEST(Alpha, TwoOverN) {
  for (int n : {2, 4, 6, 8, 10}) {
    SurfaceSpec s{-1, {BinaryForm(std::vector<Int>(n + 1, 1))}};
    EXPECT_EQ(alpha(s), make_rat(2, n));
  }
  SurfaceSpec q{-1, {BinaryForm{1, 0, 2}, BinaryForm{1, 0, 3}}};
  auto cone = effective_cone(q);
  EXPECT_EQ(cone.alpha(), Rat(1, 2));
  ASSERT_EQ(cone.effective_generators.size(), 2u);
  // [E+] + [E-] = anticanonical - (n/2) fibre.
  EXPECT_EQ(cone.effective_generators[0], std::make_pair(Rat(1), Rat(-2)));
  EXPECT_EQ(cone.effective_generators[1], std::make_pair(Rat(0), Rat(1)));
}

TEST(Lattice, GeneratorsPermuteCurveClasses) {
  for (const auto& deg : kPatterns) {
    auto lat = build_lattice(deg);
    std::vector<std::vector<Int>> curves{lat.e_plus(), lat.e_minus()};
    for (int k = 1; k <= lat.n; ++k) {
      curves.push_back(lat.d_plus(k));
      curves.push_back(lat.d_minus(k));
    }
    std::vector<ZMatrix> gens = lat.perms;
    gens.push_back(lat.sigma);
    for (const auto& g : gens) {
      std::vector<std::vector<Int>> images;
      for (const auto& c : curves) images.push_back((g * column(c)).column(0));
      auto a = curves, b = images;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Lattice, PicardContainsAnticanonicalAndFibre) {
  for (const auto& deg : kPatterns) {
    auto lat = build_lattice(deg);
    const ZMatrix pic = fixed_sublattice(lat, GeneratorSelection::all(lat));
    EXPECT_EQ(pic.cols(), 2u);
    EXPECT_TRUE(solve_integer(pic, column(lat.anticanonical)));
    EXPECT_TRUE(solve_integer(pic, column(lat.fibre())));
  }
}

TEST(TateH1, InvariantUnderFactorReordering) {
  for (auto deg : kPatterns) {
    const auto base = tate_h1(build_lattice(deg)).divisors;
    std::sort(deg.begin(), deg.end());
    do {
      EXPECT_EQ(tate_h1(build_lattice(deg)).divisors, base);
    } while (std::next_permutation(deg.begin(), deg.end()));
  }
}
