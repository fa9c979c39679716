#include <gtest/gtest.h>

#include <random>

#include "chatelet/detail/zmatrix.hpp"

using namespace chatelet;

namespace {

ZMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> cols(rows[0].size(), std::vector<Int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) cols[j][i] = rows[i][j];
  return ZMatrix::from_columns(cols, rows.size());
}

Int cofactor_det(const ZMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Int>> cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (c == j) continue;
      std::vector<Int> col;
      for (std::size_t r = 1; r < n; ++r) col.push_back(m(r, c));
      cols.push_back(col);
    }
    Int minor = cofactor_det(ZMatrix::from_columns(cols, n - 1));
    d += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return d;
}

} // namespace

TEST(ZMatrix, BareissMatchesCofactorExpansion) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + it % 5;
    std::vector<std::vector<long>> rows(n, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& x : r) x = dist(rng);
    ZMatrix m = from_rows(rows);
    EXPECT_EQ(bareiss_determinant(m), cofactor_det(m));
  }
}

TEST(ZMatrix, KernelIsSaturatedAndAnnihilates) {
  ZMatrix a = from_rows({{2, 4, 6}, {1, 2, 3}});
  ZMatrix k = integer_kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((a * k).is_zero());
  // Saturation: elementary divisors of the kernel basis are all 1.
  for (const auto& d : smith_normal_form(k).diagonal) EXPECT_EQ(d, 1);
}

TEST(ZMatrix, SmithDiagonalDivisibility) {
  ZMatrix m = from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto snf = smith_normal_form(m);
  std::vector<Int> d = snf.diagonal;
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 6);
  EXPECT_EQ(d[2], 12);
}

TEST(ZMatrix, SmithProductEqualsDeterminant) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int it = 0; it < 100; ++it) {
    std::vector<std::vector<long>> rows(4, std::vector<long>(4));
    for (auto& r : rows)
      for (auto& x : r) x = dist(rng);
    ZMatrix m = from_rows(rows);
    auto d = smith_normal_form(m).diagonal;
    Int prod = 1;
    for (const auto& x : d) prod *= x;
    EXPECT_EQ(prod, abs_int(bareiss_determinant(m)));
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i] != 0) {
        EXPECT_EQ(d[i + 1] % d[i], 0);
      }
  }
}

TEST(ZMatrix, SolveIntegerDetectsNonIntegralSolutions) {
  ZMatrix b = from_rows({{2, 0}, {0, 1}, {0, 0}});
  ZMatrix c1 = from_rows({{4}, {3}, {0}});
  ZMatrix c2 = from_rows({{3}, {3}, {0}});
  ZMatrix c3 = from_rows({{0}, {0}, {1}});
  auto s1 = solve_integer(b, c1);
  ASSERT_TRUE(s1);
  EXPECT_EQ(b * *s1, c1);
  EXPECT_FALSE(solve_integer(b, c2));
  EXPECT_FALSE(solve_integer(b, c3));
}
