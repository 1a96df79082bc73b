#include <gtest/gtest.h>

#include <random>

#include "horrocks/bipoly.hpp"

using namespace horrocks;

namespace {
const Fp::Field F;
using Form = BiForm<Fp>;

Form P(const std::string& s) { return parse_form<Fp>(s, F); }
}  // namespace

TEST(MonomialBasis, OrderAndSize) {
  EXPECT_EQ(monomial_basis({0, 0}).size(), 1u);
  EXPECT_TRUE(monomial_basis({-1, 2}).empty());
  const auto b = sq_piece(1);
  ASSERT_EQ(b.size(), 4u);
  // su, sv, tu, tv
  EXPECT_EQ(b[0], (Monomial{1, 1}));
  EXPECT_EQ(b[1], (Monomial{1, 0}));
  EXPECT_EQ(b[2], (Monomial{0, 1}));
  EXPECT_EQ(b[3], (Monomial{0, 0}));
  for (int k = 0; k < 4; ++k) EXPECT_EQ(Form::x(k, F).coeffs()[k], F.one());
}

TEST(MonomialBasis, HilbertFunctionOfQuadric) {
  // Oracle: dim S_d - dim S_{d-2} for S = k[x0..x3], the quadric being one relation of degree 2.
  auto binom3 = [](int n) { return n < 0 ? 0 : (n + 3) * (n + 2) * (n + 1) / 6; };
  for (int d = 0; d <= 8; ++d) {
    EXPECT_EQ(static_cast<int>(sq_piece(d).size()), (d + 1) * (d + 1));
    EXPECT_EQ(static_cast<int>(sq_piece(d).size()), binom3(d) - binom3(d - 2));
  }
}

TEST(MultMatrix, Basics) {
  EXPECT_EQ(mult_matrix(Form::constant(F.one()), {2, 1}), (Matrix<Fp>::identity(6, F)));
  auto ms = mult_matrix(Form::s(F), {0, 0});
  ASSERT_EQ(ms.rows(), 2u);
  EXPECT_EQ(ms(0, 0), F.one());
  EXPECT_TRUE(ms(1, 0).is_zero());
  auto msu = mult_matrix(Form::x(0, F), {0, 0});
  ASSERT_EQ(msu.rows(), 4u);
  EXPECT_EQ(msu(0, 0), F.one());
  for (int r = 1; r < 4; ++r) EXPECT_TRUE(msu(r, 0).is_zero());
}

TEST(MultMatrix, QuadricRelationAndLinearity) {
  for (int d = 0; d <= 4; ++d) {
    const BiDegree src{d, d};
    const BiDegree mid{d + 1, d + 1};
    EXPECT_EQ(mult_matrix(Form::x(3, F), mid) * mult_matrix(Form::x(0, F), src),
              mult_matrix(Form::x(2, F), mid) * mult_matrix(Form::x(1, F), src));
  }
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const BiDegree d{k % 3, (k / 3) % 3};
    const BiDegree src{(k / 2) % 4, k % 4};
    Form f = Form::random(d, F, rng), g = Form::random(d, F, rng);
    EXPECT_EQ(mult_matrix(f + g, src), mult_matrix(f, src) + mult_matrix(g, src));
    Form h = Form::random({1, 2}, F, rng);
    EXPECT_EQ(mult_matrix(h, src + d) * mult_matrix(f, src), mult_matrix(h * f, src));
  }
}

TEST(Parse, RoundTripAndErrors) {
  Form f = P("3*s^2*u - t^2*v");
  EXPECT_EQ(f.degree(), (BiDegree{2, 1}));
  EXPECT_EQ(f.to_string(), "3*s^2*u - t^2*v");
  EXPECT_EQ(P(f.to_string()), f);
  EXPECT_EQ(P("x2"), P("t*u"));
  EXPECT_EQ(P("s-2t"), P("s - 2*t"));
  EXPECT_EQ(P("7").degree(), (BiDegree{0, 0}));
  EXPECT_THROW(P("s + u"), Error);
  EXPECT_THROW(P("s +"), Error);
  EXPECT_THROW(P("q"), Error);
  BiDegree want{1, 0};
  EXPECT_EQ(parse_form<Fp>("0", F, &want).degree(), want);
  BiDegree wrong{0, 1};
  EXPECT_THROW(parse_form<Fp>("s", F, &wrong), Error);
}

TEST(Eval, MatchesProductOfValues) {
  std::mt19937_64 rng(9);
  Form f = Form::random({2, 1}, F, rng), g = Form::random({1, 3}, F, rng);
  Fp s = F.random(rng), t = F.random(rng), u = F.random(rng), v = F.random(rng);
  EXPECT_EQ((f * g).eval(F, s, t, u, v), f.eval(F, s, t, u, v) * g.eval(F, s, t, u, v));
}
