#include <gtest/gtest.h>

#include <random>

#include "horrocks/exactla.hpp"

using namespace horrocks;

namespace {

const Fp::Field F;
const Rational::Field Q;

template <class K>
Matrix<K> mat(const typename K::Field& f, std::vector<std::vector<long long>> rows) {
  Matrix<K> m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = f.make(rows[i][j]);
  return m;
}

}  // namespace

TEST(Field, ArithmeticIsExact) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Fp a = F.random_nonzero(rng);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_TRUE((a * a.inv()).is_one());
  }
  Rational q = Q.parse("-7/3");
  EXPECT_TRUE((q * q.inv()).is_one());
  EXPECT_EQ(q.to_string(), "-7/3");
}

TEST(Field, MixingPrimesIsAnError) {
  Fp::Field f5(5), f7(7);
  EXPECT_THROW(f5.one() + f7.one(), Error);
  try {
    (void)(f5.one() * f7.one());
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
  EXPECT_THROW(Fp::Field(12), Error);
}

TEST(Field, ParseFractionsModP) {
  Fp::Field f5(5);
  EXPECT_EQ(f5.parse("1/2"), f5.make(3));
  EXPECT_EQ(f5.parse("-1"), f5.make(4));
  EXPECT_THROW(f5.parse("abc"), Error);
}

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank(Matrix<Fp>::identity(2, F)), 2u);
  EXPECT_EQ(rank(Matrix<Fp>(3, 4)), 0u);
  EXPECT_EQ(rank(mat<Rational>(Q, {{1, 2}, {2, 4}})), 1u);
}

TEST(Kernel, SmallCases) {
  EXPECT_TRUE(kernel_basis(Matrix<Fp>::identity(3, F), F).empty());
  auto k = kernel_basis(Matrix<Fp>(2, 3), F);
  ASSERT_EQ(k.size(), 3u);
  EXPECT_EQ(span_rank(3, k), 3u);
  auto m = mat<Fp>(F, {{1, 1, 0}});
  auto kb = kernel_basis(m, F);
  ASSERT_EQ(kb.size(), 2u);
  EXPECT_EQ(span_rank(3, kb), 2u);
  for (const auto& v : kb) EXPECT_TRUE(is_zero_vec(m * v));
}

TEST(Solve, SmallCases) {
  Vec<Fp> rhs{F.make(5), F.make(-2)};
  EXPECT_EQ(*solve(Matrix<Fp>::identity(2, F), rhs), rhs);
  EXPECT_FALSE(solve(mat<Fp>(F, {{1, 0}, {0, 0}}), Vec<Fp>{F.make(0), F.make(1)}).has_value());
  Fp::Field f5(5);
  auto x = solve(mat<Fp>(f5, {{2}}), Vec<Fp>{f5.make(1)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], f5.make(3));
}

TEST(Quotient, SmallCases) {
  auto q0 = quotient_data<Fp>(3, {}, F);
  EXPECT_EQ(q0.projection, (Matrix<Fp>::identity(3, F)));
  auto q1 = quotient_data<Fp>(2, {{F.one(), F.zero()}, {F.one(), F.one()}}, F);
  EXPECT_EQ(q1.dim(), 0u);
  auto q2 = quotient_data<Fp>(3, {{F.one(), F.one(), F.zero()}}, F);
  EXPECT_EQ(q2.dim(), 2u);
  EXPECT_TRUE(is_zero_vec(q2.project({F.one(), F.one(), F.zero()})));
  EXPECT_FALSE(is_zero_vec(q2.project({F.one(), F.zero(), F.zero()})));
}

TEST(Properties, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    Matrix<Fp> m(r, c);
    // low-rank products exercise nontrivial kernels
    const std::size_t inner = dim(rng);
    Matrix<Fp> a(r, inner), b(inner, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a(i, j) = F.random(rng);
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = F.random(rng);
    m = a * b;
    const auto k = kernel_basis(m, F);
    EXPECT_EQ(rank(m) + k.size(), c);
    EXPECT_LE(rank(m), std::min(r, c));
    EXPECT_EQ(rank(m), rank(m.transpose()));
    for (const auto& v : k) EXPECT_TRUE(is_zero_vec(m * v));
    if (!k.empty()) EXPECT_EQ(span_rank(c, k), k.size());

    const Vec<Fp> x0 = random_vector<Fp>(c, F, rng);
    const Vec<Fp> rhs = m * x0;
    auto x = solve(m, rhs);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, rhs);
  }
}

TEST(Properties, QuotientProjection) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<Vec<Fp>> sub;
    for (std::size_t k = 0; k < (trial % 5); ++k) sub.push_back(random_vector<Fp>(n, F, rng));
    if (!sub.empty() && trial % 3 == 0) sub.push_back(sub[0]);
    const auto q = quotient_data(n, sub, F);
    EXPECT_EQ(q.dim(), n - span_rank(n, sub));
    for (const auto& s : sub) EXPECT_TRUE(q.contains(s));
    EXPECT_EQ(rank(q.projection), q.dim());
    // the coset lift is a section of the projection
    const Vec<Fp> y = random_vector<Fp>(q.dim(), F, rng);
    EXPECT_EQ(q.project(q.lift(y)), y);
  }
}

TEST(Properties, RationalsAgreeOnIntegerMatrices) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix<Rational> m(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = Q.random(rng);
    if (trial % 2) m.set_block(3, 0, m.block(0, 0, 1, 5));
    const auto k = kernel_basis(m, Q);
    EXPECT_EQ(rank(m) + k.size(), 5u);
    for (const auto& v : k) EXPECT_TRUE(is_zero_vec(m * v));
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  auto m = mat<Rational>(Q, {{2, -1, 0}, {1, 3, 4}, {0, 5, -2}});
  // 2(3*-2 - 20) - (-1)(1*-2 - 0) = -52 - 2 = -54
  EXPECT_EQ(determinant(m, Q), Q.make(-54));
  EXPECT_TRUE(determinant(mat<Fp>(F, {{1, 2}, {2, 4}}), F).is_zero());
}
