#include <gtest/gtest.h>

#include <random>

#include "chatelet/multiquad.hpp"

using namespace chatelet;

namespace {

MQElement random_element(std::mt19937& rng, const std::vector<Int>& basis) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  std::vector<Rat> c(std::size_t{1} << basis.size());
  for (auto& x : c) {
    x = Rat(num(rng), den(rng));
    x.canonicalize();
  }
  return MQElement(basis, c);
}

} // namespace

TEST(MQElement, Examples) {
  MQElement s2 = MQElement::sqrt(2);
  EXPECT_EQ((MQElement(1) + s2) * (MQElement(1) - s2), MQElement(-1));
  // 1 + sqrt2 + sqrt3 + sqrt6 = (1 + sqrt2)(1 + sqrt3), norm (-1)^2 (-2)^2.
  MQElement x({2, 3}, {1, 1, 1, 1});
  EXPECT_EQ(x.norm_to_q(), Rat(4));
  EXPECT_EQ(s2.conjugate(1), -s2);
  EXPECT_EQ(MQElement::sqrt(8), MQElement(2) * s2);
  EXPECT_EQ(MQElement::sqrt(9), MQElement(3));
}

TEST(MQElement, ProductOfSquareRootsMerges) {
  MQElement p = MQElement::sqrt(2) * MQElement::sqrt(3);
  EXPECT_EQ(p, MQElement::sqrt(6));
  EXPECT_EQ(MQElement::sqrt(6) * MQElement::sqrt(2), MQElement(2) * MQElement::sqrt(3));
  EXPECT_EQ(MQElement::sqrt(-1) * MQElement::sqrt(-1), MQElement(-1));
}

TEST(MQElement, RejectsDependentBasis) {
  EXPECT_THROW(MQElement({2, 3, 6}, std::vector<Rat>(8, 0)), DomainError);
  EXPECT_THROW(MQElement({4}, {0, 1}), DomainError);
}

TEST(MQElement, NormIsMultiplicative) {
  std::mt19937 rng(21);
  const std::vector<std::vector<Int>> bases{{2}, {-1, 3}, {5, -2}, {2, 3, 5}, {-1, 2, 7}};
  for (const auto& b : bases)
    for (int it = 0; it < 25; ++it) {
      MQElement x = random_element(rng, b), y = random_element(rng, b);
      EXPECT_EQ((x * y).norm_to_q(), x.norm_to_q() * y.norm_to_q());
    }
}

TEST(MQElement, RingAxiomsAcrossBases) {
  std::mt19937 rng(9);
  for (int it = 0; it < 50; ++it) {
    MQElement x = random_element(rng, {2}), y = random_element(rng, {3}), z = random_element(rng, {-1, 6});
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * y, y * x);
  }
}

TEST(SplitQuadratic, ProductsReconstitute) {
  for (auto f : {BinaryForm{1, 0, 2}, BinaryForm{1, 0, -2}, BinaryForm{2, 1, 1}, BinaryForm{3, -5, 7}, BinaryForm{-2, 0, 3}}) {
    auto [l1, l2] = split_quadratic(f);
    auto c = expand_product(l1, l2);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(c[j], MQElement(f[j])) << f.str();
    for (long u = -3; u <= 3; ++u)
      for (long v = -3; v <= 3; ++v) EXPECT_EQ(l1(u, v) * l2(u, v), MQElement(f(u, v)));
  }
  EXPECT_THROW(split_quadratic(BinaryForm{1, 0, -4}), DomainError);
}

TEST(Delta, Examples) {
  MQLinearForm lu{MQElement(1), MQElement(0)}, lv{MQElement(0), MQElement(-1)};
  EXPECT_EQ(delta(lu, lv), MQElement(1));
  EXPECT_EQ(delta(lu, lu), MQElement(0));
  auto [l1, l2] = split_quadratic(BinaryForm{1, 0, 2});
  EXPECT_EQ(delta(l1, l2), MQElement(2) * MQElement::sqrt(-2));
}

TEST(Delta, IsResultantOfLinearForms) {
  // For rational forms alpha u - beta v the value is Res(L_i(X,1), L_j(X,1)).
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int it = 0; it < 100; ++it) {
    long ai = d(rng), bi = d(rng), aj = d(rng), bj = d(rng);
    if (ai == 0 || aj == 0) continue;
    MQLinearForm li{MQElement(ai), MQElement(bi)}, lj{MQElement(aj), MQElement(bj)};
    Int res = resultant(BinaryForm{ai, -bi}, BinaryForm{aj, -bj});
    EXPECT_EQ(delta(li, lj), MQElement(res));
  }
}

TEST(Pluecker, Examples) {
  MQLinearForm lu{MQElement(1), MQElement(0)}, lv{MQElement(0), MQElement(-1)}, luv{MQElement(1), MQElement(-1)};
  for (long u = -4; u <= 4; ++u) EXPECT_TRUE(pluecker_residue(lu, lv, luv, u, 7).is_zero());
  auto [a1, a2] = split_quadratic(BinaryForm{1, 0, 2});
  auto [b1, b2] = split_quadratic(BinaryForm{1, 0, 3});
  const std::vector<MQLinearForm> ls{a1, a2, b1, b2};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        if (i == j || j == k || i == k) continue;
        EXPECT_TRUE(pluecker_residue(ls[i], ls[j], ls[k], 5, 7).is_zero());
        EXPECT_TRUE(pluecker_residue(ls[i], ls[j], ls[k], 0, 0).is_zero());
      }
}

TEST(SplitQuadratic, RandomIrreducibleQuadratics) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> c(-30, 30);
  int done = 0;
  while (done < 1000) {
    const long a = c(rng), b = c(rng), d = c(rng);
    if (a == 0 || is_square(Int(b) * b - 4 * a * d)) continue;
    BinaryForm f{a, b, d};
    auto [l1, l2] = split_quadratic(f);
    auto e = expand_product(l1, l2);
    for (int j = 0; j < 3; ++j) ASSERT_EQ(e[j], MQElement(f[j])) << f.str();
    ++done;
  }
}

TEST(Pluecker, RandomTwoRadicandBases) {
  std::mt19937 rng(41);
  const std::vector<std::vector<Int>> bases{{2, 3}, {-1, 5}, {-2, 7}, {3, -5}, {6, 10}};
  std::uniform_int_distribution<long> uv(-40, 40);
  for (int it = 0; it < 1000; ++it) {
    const auto& b = bases[it % bases.size()];
    MQLinearForm l[3];
    for (auto& x : l) x = {random_element(rng, b), random_element(rng, b)};
    ASSERT_TRUE(pluecker_residue(l[0], l[1], l[2], uv(rng), uv(rng)).is_zero());
  }
}
