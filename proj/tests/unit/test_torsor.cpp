#include <gtest/gtest.h>

#include "chatelet/torsor.hpp"

using namespace chatelet;

namespace {

SurfaceSpec q1q2() { return {-1, {BinaryForm{1, 0, 2}, BinaryForm{1, 0, 3}}}; }
SurfaceSpec split_quartic() { return {-1, {BinaryForm{1, 0}, BinaryForm{0, 1}, BinaryForm{1, 1}, BinaryForm{1, -2}}}; }

SurfaceSpec monomials(const std::vector<int>& deg, long a = -1) {
  SurfaceSpec s{a, {}};
  for (int d : deg) {
    std::vector<Int> c(d + 1, 0);
    c[0] = 1;
    s.factors.emplace_back(c);
  }
  return s;
}

} // namespace

TEST(SigmaSet, Examples) {
  EXPECT_EQ(sigma_set(monomials({2, 2})), (std::vector<std::vector<int>>{{1, 1}, {-1, -1}}));
  EXPECT_EQ(sigma_set(monomials({1, 1, 2})), (std::vector<std::vector<int>>{{1, 1, 1}, {1, -1, -1}}));
  EXPECT_EQ(sigma_set(monomials({4})), (std::vector<std::vector<int>>{{1}}));
}

TEST(SigmaSet, ProductOneAndSize) {
  for (const auto& deg : std::vector<std::vector<int>>{{2, 2}, {1, 3}, {2, 2, 2}, {1, 1, 1, 1}, {1, 1, 2, 2}}) {
    auto s = sigma_set(monomials(deg));
    bool odd = false;
    for (int d : deg) odd = odd || d % 2;
    EXPECT_EQ(s.size(), std::size_t{1} << (deg.size() - (odd ? 2 : 1)));
    for (const auto& e : s) {
      int p = 1;
      for (int x : e) p *= x;
      EXPECT_EQ(p, 1);
    }
  }
}

TEST(SigmaSet, TrivialWhenMinusOneIsANorm) {
  EXPECT_EQ(sigma_set(monomials({2, 2}, 2)), (std::vector<std::vector<int>>{{1, 1}}));
  EXPECT_EQ(sigma_set(monomials({2, 2}, 3)).size(), 2u);
}

TEST(MSet, Examples) {
  EXPECT_EQ(m_set(q1q2()), (std::vector<std::vector<Int>>{{1, 1}}));
  // Res = 9; r^(-1) keeps each inert prime once.
  SurfaceSpec p{-1, {BinaryForm{1, 0, 2}, BinaryForm{1, 0, 5}}};
  EXPECT_EQ(resultant_splitting(p, 0, 1).r_minus, 3);
  EXPECT_EQ(m_set(p), (std::vector<std::vector<Int>>{{1, 1}, {3, 3}}));
  // Res = 441 = 3^2 7^2, both primes inert in Q(i).
  SurfaceSpec pq{-1, {BinaryForm{1, 0, 2}, BinaryForm{1, 0, 23}}};
  ASSERT_EQ(resultant_splitting(pq, 0, 1).r_minus, 21);
  EXPECT_EQ(m_set(pq), (std::vector<std::vector<Int>>{{1, 1}, {3, 3}, {7, 7}, {21, 21}}));
}

TEST(MSet, SplitQuartic) {
  auto s = split_quartic();
  EXPECT_EQ(m_set(s), (std::vector<std::vector<Int>>{{1, 1, 1, 1}, {1, 1, 3, 3}}));
  EXPECT_EQ(label_set(s).size(), 8u);
}

TEST(AssignLabel, Examples) {
  auto s = q1q2();
  // (u, v) = (1, 2): F1 = 9, F2 = 13, F = 117 = 9^2 + 6^2.
  PointRecord pt{9, 6, 1, 1, 2};
  ASSERT_TRUE(on_surface(s, pt));
  auto lr = assign_label(s, pt);
  ASSERT_EQ(lr.kind, LabelKind::Labeled);
  EXPECT_EQ(lr.label, (TorsorLabel{{1, 1}, {1, 1}}));
  EXPECT_EQ(membership_test(s, lr.label, pt), true);
  EXPECT_EQ(membership_test(s, TorsorLabel{{-1, -1}, {1, 1}}, pt), false);
  EXPECT_EQ(membership_test(s, TorsorLabel{{1, 1}, {3, 3}}, pt), false);
}

TEST(AssignLabel, ZeroLocus) {
  auto s = split_quartic();
  PointRecord pt{0, 0, 1, 1, 0};
  auto lr = assign_label(s, pt);
  EXPECT_EQ(lr.kind, LabelKind::ZeroLocus);
}

TEST(Witness, Example) {
  auto s = q1q2();
  PointRecord pt{9, 6, 1, 1, 2};
  auto wit = lambda_torsor_witness(s, pt, TorsorLabel{{1, 1}, {1, 1}});
  ASSERT_TRUE(wit.found);
  EXPECT_EQ(wit.n, (std::vector<Int>{1, 1}));
  EXPECT_EQ(abs_int(wit.s[0]) + abs_int(wit.t[0]), 3);  // 9 = 3^2 + 0^2
  EXPECT_EQ(wit.s[1] * wit.s[1] + wit.t[1] * wit.t[1], 13);
  EXPECT_EQ(wit.product, 1);
  EXPECT_EQ(wit.product_x * wit.product_x + wit.product_y * wit.product_y, 1);
  EXPECT_FALSE(lambda_torsor_witness(s, pt, TorsorLabel{{-1, -1}, {1, 1}}).found);
}

TEST(Partition, DeskSpecs) {
  for (const auto& s : {q1q2(), split_quartic()}) {
    auto rep = partition_check(s, 50, 2);
    EXPECT_TRUE(rep.ok());
    for (const auto& v : rep.violations) ADD_FAILURE() << v;
    EXPECT_GT(rep.points, 0u);
    EXPECT_EQ(rep.labeled + rep.zero_locus.size() + rep.unknown.size(), rep.points);
    EXPECT_LE(rep.per_label.size(), rep.labels_total);
  }
}

TEST(Partition, RealField) {
  SurfaceSpec s{3, {BinaryForm{1, 0, -2}, BinaryForm{1, 0, 5}}};
  auto rep = partition_check(s, 40);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.unknown.empty());
}

TEST(Partition, EmptyIsVacuous) {
  auto rep = partition_check(q1q2(), 0);
  EXPECT_EQ(rep.points, 0u);
  EXPECT_TRUE(rep.ok());
}
