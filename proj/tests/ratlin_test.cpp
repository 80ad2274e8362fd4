#include <gtest/gtest.h>

#include <random>

#include "wfseq/ratlin.hpp"

using namespace wfseq;

namespace {

RatMatrix from_rows(std::vector<std::vector<long>> rows) {
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

RatMatrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, int rank_cap) {
  // product of r x k and k x c random matrices has rank <= k
  std::uniform_int_distribution<int> d(-5, 5);
  RatMatrix a(r, rank_cap), b(rank_cap, c);
  for (std::size_t i = 0; i < r; ++i)
    for (int j = 0; j < rank_cap; ++j) a(i, j) = Rational(d(g), 1 + (d(g) + 5) % 3);
  for (int i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = Rational(d(g), 1 + (d(g) + 5) % 4);
  for (std::size_t i = 0; i < r; ++i)
    for (int j = 0; j < rank_cap; ++j) a(i, j).canonicalize();
  for (int i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j).canonicalize();
  return a * b;
}

}  // namespace

TEST(Ratlin, IdentityHasFullRank) {
  auto r = eliminate(RatMatrix::identity(3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.nullspace.cols(), 0u);
  EXPECT_EQ(r.pivot_columns, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Ratlin, ProportionalRows) {
  auto r = eliminate(from_rows({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  ASSERT_EQ(r.nullspace.cols(), 1u);
  // kernel spanned by (-2, 1)
  EXPECT_EQ(r.nullspace(0, 0) / r.nullspace(1, 0), Rational(-2));
  EXPECT_EQ(r.reduced(0, 0), Rational(1));
  EXPECT_EQ(r.reduced(0, 1), Rational(2));
}

TEST(Ratlin, ZeroMatrixRank) { EXPECT_EQ(rank(RatMatrix(5, 7)), 0u); }

TEST(Ratlin, SolveExamples) {
  auto x = solve(RatMatrix::identity(3), {Rational(1), Rational(-2, 3), Rational(5)});
  EXPECT_EQ(x, (std::vector<Rational>{Rational(1), Rational(-2, 3), Rational(5)}));
  auto y = solve(from_rows({{1, 1}}), {Rational(2)});
  EXPECT_EQ(y, (std::vector<Rational>{Rational(2), Rational(0)}));
  EXPECT_THROW(solve(from_rows({{1, 1}, {2, 2}}), {Rational(1), Rational(3)}), Error);
}

TEST(Ratlin, RandomRankProperties) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 1 + trial % 6 * 3;
    RatMatrix m = random_matrix(g, 20, 20, k);
    auto e = eliminate(m);
    EXPECT_EQ(e.rank, rank(m.transpose()));
    EXPECT_LE(e.rank, static_cast<std::size_t>(k));
    EXPECT_EQ(e.rank + e.nullspace.cols(), 20u);
    RatMatrix z = m * e.nullspace;
    for (std::size_t i = 0; i < z.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) EXPECT_EQ(sgn(z(i, j)), 0);
    EXPECT_EQ(rank(e.nullspace), e.nullspace.cols());
    // consistent right-hand side built from a known solution
    std::vector<Rational> x0(20);
    for (int i = 0; i < 20; ++i) x0[i] = frac(i - 7, 3);
    auto b = SparseMatrix::from_dense(m).apply(x0);
    auto x = solve(m, b);
    EXPECT_EQ(SparseMatrix::from_dense(m).apply(x), b);
  }
}

TEST(Ratlin, ColumnOrderDoesNotChangeRank) {
  std::mt19937_64 g(11);
  RatMatrix m = random_matrix(g, 12, 15, 9);
  SparseMatrix s = SparseMatrix::from_dense(m);
  std::vector<std::uint32_t> order(15);
  for (std::uint32_t i = 0; i < 15; ++i) order[i] = 14 - i;
  EXPECT_EQ(rank(s), rank(s, order));
  SparseMatrix n = nullspace(s, order);
  EXPECT_EQ(n.cols(), 15 - rank(s));
  SparseMatrix z = s * n;
  EXPECT_EQ(z.nnz(), 0u);
}

TEST(Ratlin, InverseRoundTrip) {
  RatMatrix m = from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  RatMatrix i = inverse(m);
  EXPECT_EQ(m * i, RatMatrix::identity(3));
  EXPECT_THROW(inverse(from_rows({{1, 2}, {2, 4}})), Error);
}

TEST(Ratlin, IndependentColumnsGreedy) {
  SparseMatrix s = SparseMatrix::from_dense(from_rows({{1, 2, 0, 1}, {0, 0, 1, 1}}));
  EXPECT_EQ(independent_columns(s), (std::vector<std::size_t>{0, 2}));
}

TEST(Ratlin, FloatRankAgreesOnSmallIntegers) {
  std::mt19937_64 g(3);
  RatMatrix m = random_matrix(g, 10, 10, 6);
  EXPECT_EQ(float_rank(SparseMatrix::from_dense(m), 1e-9), rank(m));
}

TEST(Ratlin, CanonicalRationals) {
  Rational q = parse_rational("-6/4");
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_THROW(parse_rational("abc"), Error);
}
