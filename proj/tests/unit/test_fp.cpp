#include "oracles.hpp"
#include "weil/fp.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fp = weil::fp;

namespace {

weil::FpMat random_mat(std::size_t r, std::size_t c, int p, std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> d(0, p - 1);
  weil::FpMat m(r, weil::FpVec(c));
  for (auto& row : m)
    for (auto& x : row)
      x = d(rng);
  return m;
}

} // namespace

TEST(Fp, DeterminantMatchesLeibniz)
{
  std::mt19937_64 rng(1);
  for (int p : {3, 5, 7})
    for (std::size_t n = 1; n <= 4; ++n)
      for (int t = 0; t < 50; ++t) {
        auto m = random_mat(n, n, p, rng);
        EXPECT_EQ(fp::det(m, p), oracle::det(m, p));
      }
  EXPECT_EQ(fp::det({}, 5), 1);
}

TEST(Fp, InverseAndRank)
{
  std::mt19937_64 rng(2);
  for (int p : {3, 5, 7})
    for (int t = 0; t < 100; ++t) {
      auto m = random_mat(4, 4, p, rng);
      if (oracle::det(m, p) == 0) {
        EXPECT_LT(fp::rank(m, p), 4);
        continue;
      }
      EXPECT_EQ(fp::rank(m, p), 4);
      EXPECT_EQ(fp::mul(m, fp::inverse(m, p), p), fp::identity(4));
      EXPECT_EQ(fp::mul(fp::inverse(m, p), m, p), fp::identity(4));
    }
}

TEST(Fp, RrefIsReducedAndSpansTheSameRows)
{
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const int p = 5;
    auto m = random_mat(3, 4, p, rng);
    auto e = fp::rref(m, p);
    ASSERT_EQ(e.rows.size(), e.pivots.size());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      EXPECT_EQ(e.rows[i][static_cast<std::size_t>(e.pivots[i])], 1);
      for (std::size_t k = 0; k < e.rows.size(); ++k) {
        if (k != i) {
          EXPECT_EQ(e.rows[k][static_cast<std::size_t>(e.pivots[i])], 0);
        }
      }
    }
    EXPECT_EQ(oracle::span(e.rows, 4, p), oracle::span(m, 4, p));
  }
}

TEST(Fp, NullspaceAndSolve)
{
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const int p = 7;
    auto m = random_mat(2, 4, p, rng);
    auto ker = fp::nullspace(m, 4, p);
    EXPECT_EQ(ker.size(), 4u - static_cast<std::size_t>(fp::rank(m, p)));
    for (const auto& k : ker)
      EXPECT_TRUE(fp::is_zero(fp::apply(m, k, p)));
    auto x = random_mat(1, 4, p, rng)[0];
    auto b = fp::apply(m, x, p);
    auto sol = fp::solve(m, b, 4, p);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(fp::apply(m, *sol, p), b);
  }
  // inconsistent system
  EXPECT_FALSE(fp::solve({{1, 0}, {1, 0}}, {0, 1}, 2, 3).has_value());
}

TEST(Fp, VectorEnumerationOrder)
{
  auto vs = fp::all_vectors(2, 3);
  ASSERT_EQ(vs.size(), 9u);
  EXPECT_EQ(vs[1], (weil::FpVec{0, 1}));
  EXPECT_EQ(vs[3], (weil::FpVec{1, 0}));
  EXPECT_EQ(fp::all_vectors(0, 5).size(), 1u);
}

TEST(Fp, Formatting)
{
  EXPECT_EQ(fp::vec_to_string({1, 0, 2}), "1,0,2");
  EXPECT_EQ(fp::mat_to_string({{1, 0}, {0, 1}}), "1,0;0,1");
}
